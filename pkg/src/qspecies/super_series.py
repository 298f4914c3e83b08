"""The super ring of commutative series with anticommuting generators.

An element is ``sum_I f_I theta_I`` where ``I`` runs over sorted subsets of
``1..odd_dim`` and ``f_I`` is a truncated commutative series in ``dim``
variables.  Keys are ``(a, I)``; truncation bounds ``|a|`` only.
"""
import json
from fractions import Fraction
from types import MappingProxyType

from . import _format
from .comm_series import CommSeries
from .core import InvalidArgument, as_rational, multi_factorial, sign

_SCALARS = (int, Fraction)


class SuperSeries:
    __slots__ = ("dim", "odd_dim", "trunc", "_coeffs")

    def __init__(self, dim, odd_dim, trunc, coeffs=None):
        if dim < 0 or odd_dim < 0 or trunc < 0:
            raise InvalidArgument("dimensions and trunc must be non-negative")
        clean = {}
        for (a, theta), c in (coeffs or {}).items():
            a = tuple(a)
            theta = tuple(theta)
            if len(a) != dim or any(e < 0 for e in a):
                raise InvalidArgument(f"exponent {a} does not fit dimension {dim}")
            if list(theta) != sorted(set(theta)) or any(not 1 <= i <= odd_dim for i in theta):
                raise InvalidArgument(f"theta index {theta} is not a sorted subset of [1, {odd_dim}]")
            if sum(a) > trunc:
                continue
            c = as_rational(c)
            if c:
                clean[(a, theta)] = clean.get((a, theta), 0) + c
        self.dim = dim
        self.odd_dim = odd_dim
        self.trunc = trunc
        self._coeffs = {k: c for k, c in clean.items() if c}

    @classmethod
    def _raw(cls, dim, odd_dim, trunc, coeffs):
        obj = cls.__new__(cls)
        obj.dim = dim
        obj.odd_dim = odd_dim
        obj.trunc = trunc
        obj._coeffs = coeffs
        return obj

    @classmethod
    def zero(cls, dim, odd_dim, trunc):
        return cls(dim, odd_dim, trunc)

    @classmethod
    def constant(cls, dim, odd_dim, trunc, c):
        return cls(dim, odd_dim, trunc, {((0,) * dim, ()): c})

    @classmethod
    def one(cls, dim, odd_dim, trunc):
        return cls.constant(dim, odd_dim, trunc, 1)

    @classmethod
    def var(cls, dim, odd_dim, trunc, i):
        if not 1 <= i <= dim:
            raise InvalidArgument(f"variable index {i} outside [1, {dim}]")
        a = [0] * dim
        a[i - 1] = 1
        return cls(dim, odd_dim, trunc, {(tuple(a), ()): 1})

    @classmethod
    def theta(cls, dim, odd_dim, trunc, *indices):
        """The product ``theta_{i_1} ... theta_{i_k}`` in the given order."""
        out = cls.one(dim, odd_dim, trunc)
        for i in indices:
            if not 1 <= i <= odd_dim:
                raise InvalidArgument(f"theta index {i} outside [1, {odd_dim}]")
            out = out * cls(dim, odd_dim, trunc, {((0,) * dim, (i,)): 1})
        return out

    @classmethod
    def from_parts(cls, parts, odd_dim):
        """Build from ``{I: CommSeries}``."""
        parts = dict(parts)
        if not parts:
            raise InvalidArgument("need at least one part to fix the dimension")
        dim = {f.dim for f in parts.values()}
        if len(dim) != 1:
            raise InvalidArgument("parts must share a dimension")
        trunc = min(f.trunc for f in parts.values())
        coeffs = {}
        for theta, f in parts.items():
            for a, c in f.items():
                coeffs[(a, tuple(theta))] = c
        return cls(dim.pop(), odd_dim, trunc, coeffs)

    @property
    def coeffs(self):
        return MappingProxyType(self._coeffs)

    def __getitem__(self, key):
        a, theta = key
        return self._coeffs.get((tuple(a), tuple(theta)), Fraction(0))

    def items(self):
        return self._coeffs.items()

    def part(self, theta):
        """The commutative coefficient ``f_I``."""
        theta = tuple(theta)
        return CommSeries(self.dim, self.trunc, {a: c for (a, t), c in self._coeffs.items() if t == theta})

    def theta_support(self):
        return sorted({t for _, t in self._coeffs}, key=lambda t: (len(t), t))

    @property
    def constant_term(self):
        return self[((0,) * self.dim, ())]

    def truncate(self, n):
        n = min(n, self.trunc)
        return SuperSeries._raw(self.dim, self.odd_dim, n,
                                {k: c for k, c in self._coeffs.items() if sum(k[0]) <= n})

    def is_zero(self):
        return not self._coeffs

    def _coerce(self, other):
        if isinstance(other, SuperSeries):
            if (other.dim, other.odd_dim) != (self.dim, self.odd_dim):
                raise InvalidArgument("dimension mismatch between super series")
            return other
        if isinstance(other, _SCALARS):
            return SuperSeries.constant(self.dim, self.odd_dim, self.trunc, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        trunc = min(self.trunc, other.trunc)
        out = {k: c for k, c in self._coeffs.items() if sum(k[0]) <= trunc}
        for k, c in other._coeffs.items():
            if sum(k[0]) <= trunc:
                out[k] = out.get(k, 0) + c
        return SuperSeries._raw(self.dim, self.odd_dim, trunc, {k: c for k, c in out.items() if c})

    __radd__ = __add__

    def __neg__(self):
        return SuperSeries._raw(self.dim, self.odd_dim, self.trunc, {k: -c for k, c in self._coeffs.items()})

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
            return SuperSeries.zero(self.dim, self.odd_dim, self.trunc)
        return SuperSeries._raw(self.dim, self.odd_dim, self.trunc, {k: v * c for k, v in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        trunc = min(self.trunc, other.trunc)
        out = {}
        for (a, i), c in self._coeffs.items():
            da = sum(a)
            if da > trunc:
                continue
            si = set(i)
            for (b, j), e in other._coeffs.items():
                if da + sum(b) > trunc or si.intersection(j):
                    continue
                key = (tuple(x + y for x, y in zip(a, b)), tuple(sorted(i + j)))
                out[key] = out.get(key, 0) + sign(i, j) * c * e
        return SuperSeries._raw(self.dim, self.odd_dim, trunc, {k: v for k, v in out.items() if v})

    def __rmul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise InvalidArgument("exponent must be a non-negative integer")
        result = SuperSeries.one(self.dim, self.odd_dim, self.trunc)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, _SCALARS):
            other = SuperSeries.constant(self.dim, self.odd_dim, self.trunc, other)
        if not isinstance(other, SuperSeries):
            return NotImplemented
        if (other.dim, other.odd_dim) != (self.dim, self.odd_dim):
            return False
        t = min(self.trunc, other.trunc)
        return self.truncate(t)._coeffs == other.truncate(t)._coeffs

    __hash__ = None

    def mul_inverse(self):
        return mul_inverse(self)

    def sorted_terms(self):
        return sorted(self._coeffs.items(),
                      key=lambda t: (sum(t[0][0]) + len(t[0][1]), t[0][0], [-i for i in t[0][1]]),
                      reverse=True)

    def format(self, names=None, odd_names=None):
        names = names or _format.var_names("x", self.dim)
        odd_names = odd_names or [f"t{i}" for i in range(1, self.odd_dim + 1)]
        terms = []
        for (a, theta), c in self.sorted_terms():
            factors = list(zip(names, a)) + [(odd_names[i - 1], 1) for i in theta]
            terms.append((c, _format.monomial(factors)))
        return _format.join_terms(terms)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"SuperSeries(dim={self.dim}, odd={self.odd_dim}, trunc={self.trunc}, {self.format()!s})"

    def to_json(self):
        terms = [{"exp": list(a), "theta": list(t), "num": str(c.numerator), "den": str(c.denominator)}
                 for (a, t), c in sorted(self._coeffs.items(), key=lambda kv: (kv[0][0], len(kv[0][1]), kv[0][1]))]
        return {"dim": self.dim, "odd": self.odd_dim, "trunc": self.trunc, "terms": terms}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["dim"], data["odd"], data["trunc"],
                   {(tuple(t["exp"]), tuple(t["theta"])): Fraction(int(t["num"]), int(t["den"]))
                    for t in data["terms"]})


def add(f, g):
    return f + g


def mul(f, g):
    return f * g


def mul_inverse(s):
    """Inverse of ``1 - f`` with ``f`` vanishing at the origin, by the signed geometric sum.

    ``f^n`` vanishes once ``n`` exceeds both the truncation order and the
    number of odd generators, so the sum is finite.
    """
    if s.constant_term != 1:
        raise InvalidArgument("multiplicative inverse needs constant term 1")
    f = 1 - s
    result = SuperSeries.one(s.dim, s.odd_dim, s.trunc)
    for _ in range(s.trunc + s.odd_dim):
        result = 1 + f * result
    return result


def power_sequence(s, a):
    if a < 0:
        raise InvalidArgument("power must be non-negative")
    return s ** a


def sequence_values(s):
    """Divided-power readback ``{(n, I): n! * coeff}`` in the even variables."""
    return {(n, theta): c * multi_factorial(n) for (n, theta), c in s.items()}


def multiplicative_rhs(values_a, values_b, n, theta):
    """Signed convolution ``sum_{j, A} sgn(A, I - A) C(n, j) s_{j,A}(a) s_{n-j,I-A}(b)``."""
    from itertools import combinations
    from .core import binomial, multi_indices_below
    theta = tuple(theta)
    total = Fraction(0)
    for k in range(len(theta) + 1):
        for sub in combinations(theta, k):
            rest = tuple(i for i in theta if i not in sub)
            sg = sign(sub, rest)
            for j in multi_indices_below(n):
                coef = 1
                for ni, ji in zip(n, j):
                    coef *= binomial(ni, ji)
                other = tuple(ni - ji for ni, ji in zip(n, j))
                total += sg * coef * values_a.get((j, sub), 0) * values_b.get((other, rest), 0)
    return total
