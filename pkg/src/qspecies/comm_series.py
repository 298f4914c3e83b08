"""Truncated commutative power series over the rationals.

A :class:`CommSeries` stores plain monomial coefficients ``{a: c}`` for
``c x^a`` with total degree ``|a| <= trunc``.  The divided-power view
``|F| = sum F[a] x^a / a!`` used by species valuations lives only in
:func:`egf_counts` and :func:`counts_to_series`.

Two series compare equal when they agree up to the smaller of their
truncation orders.
"""
import json
from fractions import Fraction
from types import MappingProxyType

from . import _format, kernels
from .core import InvalidArgument, InvariantError, as_rational, multi_factorial

_SCALARS = (int, Fraction)


class CommSeries:
    __slots__ = ("dim", "trunc", "_coeffs")

    def __init__(self, dim, trunc, coeffs=None):
        if dim < 0 or trunc < 0:
            raise InvalidArgument("dim and trunc must be non-negative")
        clean = {}
        for a, c in (coeffs or {}).items():
            a = tuple(a)
            if len(a) != dim or any(e < 0 for e in a):
                raise InvalidArgument(f"exponent {a} does not fit dimension {dim}")
            if sum(a) > trunc:
                continue
            c = as_rational(c)
            if c:
                clean[a] = clean.get(a, 0) + c
        self.dim = dim
        self.trunc = trunc
        self._coeffs = {a: c for a, c in clean.items() if c}

    # ---------------------------------------------------------- constructors

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
        return cls(dim, trunc, {(0,) * dim: c})

    @classmethod
    def one(cls, dim, trunc):
        return cls.constant(dim, trunc, 1)

    @classmethod
    def var(cls, dim, trunc, i):
        """The coordinate ``x_i`` (1-based)."""
        if not 1 <= i <= dim:
            raise InvalidArgument(f"variable index {i} outside [1, {dim}]")
        a = [0] * dim
        a[i - 1] = 1
        return cls(dim, trunc, {tuple(a): 1})

    @classmethod
    def monomial(cls, dim, trunc, a, c=1):
        return cls(dim, trunc, {tuple(a): c})

    @classmethod
    def exp_linear(cls, dim, trunc, weights=None):
        """Truncation of ``exp(w_1 x_1 + ... + w_d x_d)``; all weights 1 by default."""
        weights = [as_rational(w) for w in (weights or [1] * dim)]
        if len(weights) != dim:
            raise InvalidArgument("one weight per variable")
        from .core import multi_indices
        coeffs = {}
        for a in multi_indices(dim, trunc):
            c = Fraction(1, multi_factorial(a))
            for w, e in zip(weights, a):
                c *= w ** e
            coeffs[a] = c
        return cls(dim, trunc, coeffs)

    # ---------------------------------------------------------- access

    @property
    def coeffs(self):
        return MappingProxyType(self._coeffs)

    def __getitem__(self, a):
        return self._coeffs.get(tuple(a), Fraction(0))

    def items(self):
        return self._coeffs.items()

    @property
    def constant_term(self):
        return self[(0,) * self.dim]

    def degree(self):
        """Largest total degree present; -1 for the zero series."""
        return max((sum(a) for a in self._coeffs), default=-1)

    def homogeneous_part(self, n):
        return CommSeries._raw(self.dim, self.trunc, {a: c for a, c in self._coeffs.items() if sum(a) == n})

    def truncate(self, n):
        n = min(n, self.trunc)
        return CommSeries._raw(self.dim, n, {a: c for a, c in self._coeffs.items() if sum(a) <= n})

    def is_zero(self):
        return not self._coeffs

    # ---------------------------------------------------------- arithmetic

    def _coerce(self, other):
        if isinstance(other, CommSeries):
            if other.dim != self.dim:
                raise InvalidArgument(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other
        if isinstance(other, _SCALARS):
            return CommSeries.constant(self.dim, self.trunc, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        trunc = min(self.trunc, other.trunc)
        out = {a: c for a, c in self._coeffs.items() if sum(a) <= trunc}
        for a, c in other._coeffs.items():
            if sum(a) <= trunc:
                out[a] = out.get(a, 0) + c
        return CommSeries._raw(self.dim, trunc, {a: c for a, c in out.items() if c})

    __radd__ = __add__

    def __neg__(self):
        return CommSeries._raw(self.dim, self.trunc, {a: -c for a, c in self._coeffs.items()})

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
            return CommSeries.zero(self.dim, self.trunc)
        return CommSeries._raw(self.dim, self.trunc, {a: v * c for a, v in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        trunc = min(self.trunc, other.trunc)
        return CommSeries._raw(self.dim, trunc, kernels.graded_mul(self._coeffs, other._coeffs, trunc))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            if other == 0:
                raise ZeroDivisionError("division of a series by zero")
            return self.scale(Fraction(1) / other)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise InvalidArgument("exponent must be a non-negative integer")
        result = CommSeries.one(self.dim, self.trunc)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, _SCALARS):
            other = CommSeries.constant(self.dim, self.trunc, other)
        if not isinstance(other, CommSeries):
            return NotImplemented
        if other.dim != self.dim:
            return False
        t = min(self.trunc, other.trunc)
        return self.truncate(t)._coeffs == other.truncate(t)._coeffs

    __hash__ = None

    # ---------------------------------------------------------- calculus

    def derivative(self, i):
        return derivative(self, i)

    def compose(self, *gs):
        return compose(self, *gs)

    def mul_inverse(self):
        return mul_inverse(self)

    # ---------------------------------------------------------- output

    def sorted_terms(self):
        """Terms in display order: descending total degree, then descending exponent."""
        return sorted(self._coeffs.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def format(self, names=None):
        names = names or _format.var_names("x", self.dim)
        return _format.join_terms(
            [(c, _format.monomial(zip(names, a))) for a, c in self.sorted_terms()])

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"CommSeries(dim={self.dim}, trunc={self.trunc}, {self.format()!s})"

    def to_json(self):
        terms = [{"exp": list(a), "num": str(c.numerator), "den": str(c.denominator)}
                 for a, c in sorted(self._coeffs.items())]
        return {"dim": self.dim, "trunc": self.trunc, "terms": terms}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["dim"], data["trunc"],
                   {tuple(t["exp"]): Fraction(int(t["num"]), int(t["den"])) for t in data["terms"]})


def _check_same_dim(*series):
    dims = {s.dim for s in series}
    if len(dims) > 1:
        raise InvalidArgument(f"dimension mismatch: {sorted(dims)}")


def add(f, g):
    return f + g


def mul(f, g):
    return f * g


def derivative(f, i):
    """Partial derivative in ``x_i``; the result is known to one order less."""
    if not 1 <= i <= f.dim:
        raise InvalidArgument(f"variable index {i} outside [1, {f.dim}]")
    if f.trunc == 0:
        raise InvalidArgument("cannot differentiate a series known only to order 0")
    out = {}
    k = i - 1
    for a, c in f.items():
        if a[k]:
            b = a[:k] + (a[k] - 1,) + a[k + 1:]
            out[b] = c * a[k]
    return CommSeries._raw(f.dim, f.trunc - 1, out)


def compose(f, *gs):
    """Substitute ``x_i -> g_i`` in ``f``.

    Every ``g_i`` must have zero constant term; the result is known up to
    the smallest truncation order involved.
    """
    if len(gs) == 1 and isinstance(gs[0], (list, tuple)):
        gs = tuple(gs[0])
    if len(gs) != f.dim:
        raise InvalidArgument(f"need {f.dim} substitutions, got {len(gs)}")
    if not gs:
        return f
    _check_same_dim(*gs)
    for i, g in enumerate(gs, 1):
        if g.constant_term != 0:
            raise InvalidArgument(f"substitution {i} has a nonzero constant term")
    dim = gs[0].dim
    trunc = min([f.trunc] + [g.trunc for g in gs])
    powers = [[CommSeries.one(dim, trunc)] for _ in gs]
    result = {}
    for a, c in f.items():
        if sum(a) > trunc:
            continue
        term = None
        for i, e in enumerate(a):
            if not e:
                continue
            pw = powers[i]
            while len(pw) <= e:
                pw.append(pw[-1] * gs[i].truncate(trunc))
            term = pw[e] if term is None else term * pw[e]
        if term is None:
            term = powers[0][0] if powers else CommSeries.one(dim, trunc)
        for b, v in term.items():
            result[b] = result.get(b, 0) + c * v
    return CommSeries(dim, trunc, result)


def mul_inverse(s):
    """Inverse of a series with constant term 1, as the geometric sum of ``1 - s``."""
    if s.constant_term != 1:
        raise InvalidArgument("multiplicative inverse needs constant term 1")
    f = 1 - s
    result = CommSeries.one(s.dim, s.trunc)
    for _ in range(s.trunc):
        result = 1 + f * result
    return result


def _linear_part_is_identity(s_list, dim):
    for i, s in enumerate(s_list):
        if s.constant_term != 0:
            return False
        for j in range(dim):
            e = [0] * dim
            e[j] = 1
            if s[tuple(e)] != (1 if i == j else 0):
                return False
    return True


def comp_inverse(s_list):
    """Compositional inverse of ``(s_1, ..., s_d)`` with ``s(0) = 0`` and identity linear part.

    Writing ``s = x - f`` the inverse ``t`` solves ``t = x + f(t)``; one
    fixed-point step fixes one more degree.
    """
    s_list = tuple(s_list)
    if not s_list:
        raise InvalidArgument("need at least one series")
    dim = len(s_list)
    _check_same_dim(*s_list)
    if s_list[0].dim != dim:
        raise InvalidArgument("a compositional inverse needs d series in d variables")
    if not _linear_part_is_identity(s_list, dim):
        raise InvalidArgument("series must vanish at 0 with identity linear part")
    trunc = min(s.trunc for s in s_list)
    xs = tuple(CommSeries.var(dim, trunc, i) for i in range(1, dim + 1))
    fs = tuple(x - s for x, s in zip(xs, s_list))
    t = xs
    for _ in range(trunc):
        t = tuple(x + compose(f, t) for x, f in zip(xs, fs))
    check = tuple(compose(s, t) for s in s_list)
    if any(c != x for c, x in zip(check, xs)):
        raise InvariantError("compositional inverse failed to round-trip")
    return t


def power_sequence(s, a):
    """``s^a`` with ``s^0 = 1``."""
    if a < 0:
        raise InvalidArgument("power must be non-negative")
    return s ** a


def egf_counts(f):
    """Divided-power coefficients ``{a: a! c_a}``."""
    return {a: c * multi_factorial(a) for a, c in f.items()}


def counts_to_series(counts, dim, trunc):
    """Inverse of :func:`egf_counts`."""
    return CommSeries(dim, trunc, {tuple(a): as_rational(v) / multi_factorial(a) for a, v in counts.items()})


def polybinomial_values(s, a):
    """The sequence values ``s_n(a)``: divided-power coefficients of ``s^a``."""
    return egf_counts(power_sequence(s, a))


def polybinomial_rhs(values_a, values_b, n):
    """Right-hand side of the polybinomial convolution at multi-index ``n``."""
    from .core import binomial, multi_indices_below
    total = Fraction(0)
    for j in multi_indices_below(n):
        coef = 1
        for ni, ji in zip(n, j):
            coef *= binomial(ni, ji)
        rest = tuple(ni - ji for ni, ji in zip(n, j))
        total += coef * values_a.get(j, 0) * values_b.get(rest, 0)
    return total
