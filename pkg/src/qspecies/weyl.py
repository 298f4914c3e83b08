"""The Weyl algebra in normal order with a combinatorial star product.

An element is ``sum c x^a y^b h^c`` with every ``x`` written left of every
``y``; ``h`` is central and ``y_i x_j = x_j y_i + delta_ij h``.  The grade of
a monomial is ``|a| + |b| + 2c`` and elements are truncated by grade, so
the product of graded pieces stays graded.
"""
import json
from fractions import Fraction
from itertools import product
from types import MappingProxyType

from . import _format
from .core import (InvalidArgument, as_rational, binomial, double_factorial, factorial,
                   multi_factorial, multinomial)

_SCALARS = (int, Fraction)


def _grade(key):
    a, b, c = key
    return sum(a) + sum(b) + 2 * c


class WeylElement:
    __slots__ = ("dim", "trunc", "_coeffs")

    def __init__(self, dim, trunc, coeffs=None):
        if dim < 0 or trunc < 0:
            raise InvalidArgument("dim and trunc must be non-negative")
        clean = {}
        for (a, b, c), v in (coeffs or {}).items():
            a = tuple(a)
            b = tuple(b)
            if len(a) != dim or len(b) != dim or c < 0 or min(a + b, default=0) < 0:
                raise InvalidArgument(f"key {(a, b, c)} does not fit dimension {dim}")
            key = (a, b, c)
            if _grade(key) > trunc:
                continue
            v = as_rational(v)
            if v:
                clean[key] = clean.get(key, 0) + v
        self.dim = dim
        self.trunc = trunc
        self._coeffs = {k: v for k, v in clean.items() if v}

    @classmethod
    def _raw(cls, dim, trunc, coeffs):
        obj = cls.__new__(cls)
        obj.dim = dim
        obj.trunc = trunc
        obj._coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, dim, trunc):
        return cls(dim, trunc)

    @classmethod
    def constant(cls, dim, trunc, c):
        z = (0,) * dim
        return cls(dim, trunc, {(z, z, 0): c})

    @classmethod
    def one(cls, dim, trunc):
        return cls.constant(dim, trunc, 1)

    @classmethod
    def monomial(cls, dim, trunc, a, b, c=0, coeff=1):
        return cls(dim, trunc, {(tuple(a), tuple(b), c): coeff})

    @classmethod
    def x(cls, dim, trunc, i=1):
        return cls.monomial(dim, trunc, _unit(dim, i), (0,) * dim)

    @classmethod
    def y(cls, dim, trunc, i=1):
        return cls.monomial(dim, trunc, (0,) * dim, _unit(dim, i))

    @classmethod
    def h(cls, dim, trunc):
        z = (0,) * dim
        return cls.monomial(dim, trunc, z, z, 1)

    @property
    def coeffs(self):
        return MappingProxyType(self._coeffs)

    def __getitem__(self, key):
        a, b, c = key
        return self._coeffs.get((tuple(a), tuple(b), c), Fraction(0))

    def items(self):
        return self._coeffs.items()

    @property
    def constant_term(self):
        z = (0,) * self.dim
        return self[(z, z, 0)]

    def truncate(self, n):
        n = min(n, self.trunc)
        return WeylElement._raw(self.dim, n, {k: v for k, v in self._coeffs.items() if _grade(k) <= n})

    def classical_part(self):
        """The ``h^0`` coefficients as a commutative series in ``x_1..x_d, y_1..y_d``."""
        from .comm_series import CommSeries
        return CommSeries(2 * self.dim, self.trunc, {a + b: v for (a, b, c), v in self._coeffs.items() if c == 0})

    def h_part(self, c):
        """Coefficient of ``h^c`` as a commutative series in ``x, y``."""
        from .comm_series import CommSeries
        return CommSeries(2 * self.dim, max(self.trunc - 2 * c, 0),
                          {a + b: v for (a, b, e), v in self._coeffs.items() if e == c})

    def _coerce(self, other):
        if isinstance(other, WeylElement):
            if other.dim != self.dim:
                raise InvalidArgument(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other
        if isinstance(other, _SCALARS):
            return WeylElement.constant(self.dim, self.trunc, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        trunc = min(self.trunc, other.trunc)
        out = {k: v for k, v in self._coeffs.items() if _grade(k) <= trunc}
        for k, v in other._coeffs.items():
            if _grade(k) <= trunc:
                out[k] = out.get(k, 0) + v
        return WeylElement._raw(self.dim, trunc, {k: v for k, v in out.items() if v})

    __radd__ = __add__

    def __neg__(self):
        return WeylElement._raw(self.dim, self.trunc, {k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = as_rational(c)
        if not c:
            return WeylElement.zero(self.dim, self.trunc)
        return WeylElement._raw(self.dim, self.trunc, {k: v * c for k, v in self._coeffs.items()})

    def __mul__(self, other):
        """``*`` is the star product; scalars act by scaling."""
        if isinstance(other, _SCALARS):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return star_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / other)
        return NotImplemented

    def __pow__(self, n):
        return star_power(self, n)

    def __eq__(self, other):
        if isinstance(other, _SCALARS):
            other = WeylElement.constant(self.dim, self.trunc, other)
        if not isinstance(other, WeylElement):
            return NotImplemented
        if other.dim != self.dim:
            return False
        t = min(self.trunc, other.trunc)
        return self.truncate(t)._coeffs == other.truncate(t)._coeffs

    __hash__ = None

    def sorted_terms(self):
        """Descending grade, then descending ``(a, b, c)``."""
        return sorted(self._coeffs.items(), key=lambda t: (_grade(t[0]), t[0]), reverse=True)

    def format(self):
        xs = _format.var_names("x", self.dim)
        ys = _format.var_names("y", self.dim)
        terms = []
        for (a, b, c), v in self.sorted_terms():
            factors = list(zip(xs, a)) + list(zip(ys, b)) + [("h", c)]
            terms.append((v, _format.monomial(factors)))
        return _format.join_terms(terms)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"WeylElement(dim={self.dim}, trunc={self.trunc}, {self.format()!s})"

    def to_json(self):
        terms = [{"x": list(a), "y": list(b), "h": c, "num": str(v.numerator), "den": str(v.denominator)}
                 for (a, b, c), v in sorted(self._coeffs.items())]
        return {"dim": self.dim, "trunc": self.trunc, "terms": terms}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["dim"], data["trunc"],
                   {(tuple(t["x"]), tuple(t["y"]), t["h"]): Fraction(int(t["num"]), int(t["den"]))
                    for t in data["terms"]})


def _unit(dim, i):
    if not 1 <= i <= dim:
        raise InvalidArgument(f"index {i} outside [1, {dim}]")
    return tuple(1 if j == i - 1 else 0 for j in range(dim))


def _contraction_terms(b, a2):
    """Pairs ``(k, weight)`` for moving ``y^b`` past ``x^{a2}``."""
    ranges = [range(min(bi, ai) + 1) for bi, ai in zip(b, a2)]
    for k in product(*ranges):
        w = 1
        for ki, bi, ai in zip(k, b, a2):
            w *= factorial(ki) * binomial(bi, ki) * binomial(ai, ki)
        yield k, w


def star_mul(f, g):
    """Star product of normal-ordered elements via the contraction rule."""
    if f.dim != g.dim:
        raise InvalidArgument(f"dimension mismatch: {f.dim} vs {g.dim}")
    trunc = min(f.trunc, g.trunc)
    out = {}
    for (a, b, c), u in f.items():
        gf = _grade((a, b, c))
        if gf > trunc:
            continue
        for (a2, b2, c2), v in g.items():
            if gf + _grade((a2, b2, c2)) > trunc:
                continue
            uv = u * v
            for k, w in _contraction_terms(b, a2):
                key = (tuple(p + q - r for p, q, r in zip(a, a2, k)),
                       tuple(p + q - r for p, q, r in zip(b, b2, k)),
                       c + c2 + sum(k))
                out[key] = out.get(key, 0) + w * uv
    return WeylElement._raw(f.dim, trunc, {k: v for k, v in out.items() if v})


def star_power(f, n):
    if not isinstance(n, int) or n < 0:
        raise InvalidArgument("exponent must be a non-negative integer")
    result = WeylElement.one(f.dim, f.trunc)
    for _ in range(n):
        result = star_mul(result, f)
    return result


def commutator(f, g):
    return star_mul(f, g) - star_mul(g, f)


def sequence_values(s):
    """Divided-power readback ``{(a, b, c): a! b! c! coeff}`` of an element."""
    return {k: v * multi_factorial(k[0]) * multi_factorial(k[1]) * factorial(k[2]) for k, v in s.items()}


def star_power_values(s, r):
    """The sequence values ``s_{m,n,l}(r)`` read from the star power ``s^r``."""
    return sequence_values(star_power(s, r))


def quantum_multinomial_rhs(values_r, values_t, m, n, l):
    """Right side of the quantum multinomial convolution in one degree of freedom.

    The contracted block of size ``l3`` becomes extra ``y``s on the left
    factor and extra ``x``s on the right factor.
    """
    total = Fraction(0)
    for l1 in range(l + 1):
        for l2 in range(l - l1 + 1):
            l3 = l - l1 - l2
            ml = multinomial(l, (l1, l2, l3))
            for m1 in range(m + 1):
                for n1 in range(n + 1):
                    left = values_r.get(((m1,), (n1 + l3,), l1), 0)
                    if not left:
                        continue
                    right = values_t.get(((m - m1 + l3,), (n - n1,), l2), 0)
                    total += ml * binomial(m, m1) * binomial(n, n1) * left * right
    return total


def quantum_binomial(n, a, b):
    """``n! (n-a-b-1)!! / (a! b! (n-a-b)!)``, zero outside its domain."""
    if a < 0 or b < 0 or n < 0:
        return Fraction(0)
    r = n - a - b
    if r < 0 or r % 2:
        return Fraction(0)
    return Fraction(factorial(n) * double_factorial(r - 1), factorial(a) * factorial(b) * factorial(r))


def _support_kind(key):
    a, b, c = key
    kinds = []
    if any(a):
        kinds.append("x")
    if any(b):
        kinds.append("y")
    if c:
        kinds.append("h")
    return kinds


def exp_element(f):
    """``sum f^n / n!`` for ``f`` supported purely on x's, purely on y's, or purely on h."""
    kinds = set()
    for key in f._coeffs:
        k = _support_kind(key)
        if not k:
            raise InvalidArgument("exponential needs a zero constant term")
        if len(k) > 1:
            raise InvalidArgument("exponential of a mixed monomial is not supported")
        kinds.update(k)
    if len(kinds) > 1:
        raise InvalidArgument("exponential needs support on x only, y only, or h only")
    result = WeylElement.one(f.dim, f.trunc)
    term = WeylElement.one(f.dim, f.trunc)
    for n in range(1, f.trunc + 1):
        term = star_mul(term, f) / n
        if not term._coeffs:
            break
        result = result + term
    return result
