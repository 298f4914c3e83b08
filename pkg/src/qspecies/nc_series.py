"""Truncated noncommutative power series keyed by words.

A word is a tuple of letters in ``1..dim``; ``()`` is the empty word.  The
truncation order bounds word length.  :func:`abelianize` and
:func:`symmetrize` connect this ring to :mod:`qspecies.comm_series`.
"""
import json
from fractions import Fraction
from itertools import combinations
from types import MappingProxyType

from . import _format, kernels
from .comm_series import CommSeries
from .core import InvalidArgument, InvariantError, as_rational, content, multi_factorial, words_of_content

_SCALARS = (int, Fraction)


def _word_key(w):
    return (len(w), w)


class NCSeries:
    __slots__ = ("dim", "trunc", "_coeffs")

    def __init__(self, dim, trunc, coeffs=None):
        if dim < 0 or trunc < 0:
            raise InvalidArgument("dim and trunc must be non-negative")
        clean = {}
        for w, c in (coeffs or {}).items():
            w = tuple(w)
            if any(not 1 <= letter <= dim for letter in w):
                raise InvalidArgument(f"word {w} has a letter outside [1, {dim}]")
            if len(w) > trunc:
                continue
            c = as_rational(c)
            if c:
                clean[w] = clean.get(w, 0) + c
        self.dim = dim
        self.trunc = trunc
        self._coeffs = {w: c for w, c in clean.items() if c}

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
        return cls(dim, trunc, {(): c})

    @classmethod
    def one(cls, dim, trunc):
        return cls.constant(dim, trunc, 1)

    @classmethod
    def var(cls, dim, trunc, i):
        if not 1 <= i <= dim:
            raise InvalidArgument(f"variable index {i} outside [1, {dim}]")
        return cls(dim, trunc, {(i,): 1})

    @classmethod
    def word(cls, dim, trunc, w, c=1):
        return cls(dim, trunc, {tuple(w): c})

    @property
    def coeffs(self):
        return MappingProxyType(self._coeffs)

    def __getitem__(self, w):
        return self._coeffs.get(tuple(w), Fraction(0))

    def items(self):
        return self._coeffs.items()

    @property
    def constant_term(self):
        return self[()]

    def truncate(self, n):
        n = min(n, self.trunc)
        return NCSeries._raw(self.dim, n, {w: c for w, c in self._coeffs.items() if len(w) <= n})

    def is_zero(self):
        return not self._coeffs

    def _coerce(self, other):
        if isinstance(other, NCSeries):
            if other.dim != self.dim:
                raise InvalidArgument(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other
        if isinstance(other, _SCALARS):
            return NCSeries.constant(self.dim, self.trunc, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        trunc = min(self.trunc, other.trunc)
        out = {w: c for w, c in self._coeffs.items() if len(w) <= trunc}
        for w, c in other._coeffs.items():
            if len(w) <= trunc:
                out[w] = out.get(w, 0) + c
        return NCSeries._raw(self.dim, trunc, {w: c for w, c in out.items() if c})

    __radd__ = __add__

    def __neg__(self):
        return NCSeries._raw(self.dim, self.trunc, {w: -c for w, c in self._coeffs.items()})

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
            return NCSeries.zero(self.dim, self.trunc)
        return NCSeries._raw(self.dim, self.trunc, {w: v * c for w, v in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        trunc = min(self.trunc, other.trunc)
        return NCSeries._raw(self.dim, trunc, kernels.word_mul(self._coeffs, other._coeffs, trunc))

    def __rmul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            if other == 0:
                raise ZeroDivisionError("division of a series by zero")
            return self.scale(Fraction(1) / other)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise InvalidArgument("exponent must be a non-negative integer")
        result = NCSeries.one(self.dim, self.trunc)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, _SCALARS):
            other = NCSeries.constant(self.dim, self.trunc, other)
        if not isinstance(other, NCSeries):
            return NotImplemented
        if other.dim != self.dim:
            return False
        t = min(self.trunc, other.trunc)
        return self.truncate(t)._coeffs == other.truncate(t)._coeffs

    __hash__ = None

    def derivative(self, i):
        return derivative(self, i)

    def compose(self, *gs):
        return compose(self, *gs)

    def mul_inverse(self):
        return mul_inverse(self)

    def sorted_terms(self):
        """Descending length, then lexicographic word (the order used for commutative monomials)."""
        return sorted(self._coeffs.items(), key=lambda t: (-len(t[0]), t[0]))

    def format(self, names=None):
        names = names or _format.var_names("x", self.dim)
        terms = []
        for w, c in self.sorted_terms():
            # collapse runs of the same letter into powers
            factors = []
            for letter in w:
                if factors and factors[-1][0] == names[letter - 1]:
                    factors[-1][1] += 1
                else:
                    factors.append([names[letter - 1], 1])
            terms.append((c, _format.monomial(factors)))
        return _format.join_terms(terms)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"NCSeries(dim={self.dim}, trunc={self.trunc}, {self.format()!s})"

    def to_json(self):
        terms = [{"word": list(w), "num": str(c.numerator), "den": str(c.denominator)}
                 for w, c in sorted(self._coeffs.items(), key=lambda t: _word_key(t[0]))]
        return {"dim": self.dim, "trunc": self.trunc, "terms": terms}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["dim"], data["trunc"],
                   {tuple(t["word"]): Fraction(int(t["num"]), int(t["den"])) for t in data["terms"]})


def add(f, g):
    return f + g


def mul(f, g):
    return f * g


def derivative(f, i):
    """Deletion derivative: each occurrence of letter ``i`` in a word may be removed."""
    if not 1 <= i <= f.dim:
        raise InvalidArgument(f"variable index {i} outside [1, {f.dim}]")
    if f.trunc == 0:
        raise InvalidArgument("cannot differentiate a series known only to order 0")
    out = {}
    for w, c in f.items():
        for p, letter in enumerate(w):
            if letter == i:
                v = w[:p] + w[p + 1:]
                out[v] = out.get(v, 0) + c
    return NCSeries(f.dim, f.trunc - 1, out)


def compose(f, *gs):
    """Ordered substitution: the word ``u_1 ... u_k`` becomes ``g_{u_1} ... g_{u_k}``."""
    if len(gs) == 1 and isinstance(gs[0], (list, tuple)):
        gs = tuple(gs[0])
    if len(gs) != f.dim:
        raise InvalidArgument(f"need {f.dim} substitutions, got {len(gs)}")
    if not gs:
        return f
    dims = {g.dim for g in gs}
    if len(dims) > 1:
        raise InvalidArgument(f"dimension mismatch: {sorted(dims)}")
    for i, g in enumerate(gs, 1):
        if g.constant_term != 0:
            raise InvalidArgument(f"substitution {i} has a nonzero constant term")
    dim = gs[0].dim
    trunc = min([f.trunc] + [g.trunc for g in gs])
    gs = [g.truncate(trunc) for g in gs]
    # products of substitutions, shared along common word prefixes
    cache = {(): NCSeries.one(dim, trunc)}

    def prod(w):
        if w not in cache:
            cache[w] = prod(w[:-1]) * gs[w[-1] - 1]
        return cache[w]

    result = {}
    for w, c in f.items():
        if len(w) > trunc:
            continue
        for v, x in prod(w).items():
            result[v] = result.get(v, 0) + c * x
    return NCSeries(dim, trunc, result)


def mul_inverse(s):
    """Two-sided inverse of ``1 - f`` as the geometric sum of ``f``."""
    if s.constant_term != 1:
        raise InvalidArgument("multiplicative inverse needs constant term 1")
    f = 1 - s
    result = NCSeries.one(s.dim, s.trunc)
    for _ in range(s.trunc):
        result = 1 + f * result
    return result


def comp_inverse(s_list):
    """Compositional inverse of ``s_i = x_i - f_i`` where ``f_i`` has no words of length <= 1."""
    s_list = tuple(s_list)
    if not s_list:
        raise InvalidArgument("need at least one series")
    dim = len(s_list)
    if any(s.dim != dim for s in s_list):
        raise InvalidArgument("a compositional inverse needs d series in d letters")
    trunc = min(s.trunc for s in s_list)
    xs = tuple(NCSeries.var(dim, trunc, i) for i in range(1, dim + 1))
    fs = tuple(x - s for x, s in zip(xs, s_list))
    for i, f in enumerate(fs, 1):
        if any(len(w) <= 1 for w, _ in f.items()):
            raise InvalidArgument(f"series {i} is not x_{i} plus terms of length >= 2")
    t = xs
    for _ in range(trunc):
        t = tuple(x + compose(f, t) for x, f in zip(xs, fs))
    left = tuple(compose(s, t) for s in s_list)
    right = tuple(compose(u, s_list) for u in t)
    if any(a != x for a, x in zip(left, xs)) or any(b != x for b, x in zip(right, xs)):
        raise InvariantError("compositional inverse failed to round-trip")
    return t


def shuffle(f, g):
    """Shuffle product: interleavings of the words of ``f`` and ``g``."""
    if f.dim != g.dim:
        raise InvalidArgument(f"dimension mismatch: {f.dim} vs {g.dim}")
    trunc = min(f.trunc, g.trunc)
    out = {}
    for u, cu in f.items():
        for v, cv in g.items():
            n = len(u) + len(v)
            if n > trunc:
                continue
            for pos in combinations(range(n), len(u)):
                w = [0] * n
                chosen = set(pos)
                iu = iter(u)
                iv = iter(v)
                for p in range(n):
                    w[p] = next(iu) if p in chosen else next(iv)
                w = tuple(w)
                out[w] = out.get(w, 0) + cu * cv
    return NCSeries(f.dim, trunc, out)


def abelianize(f):
    """The ring map ``pi``: a word goes to the commutative monomial of its content."""
    out = {}
    for w, c in f.items():
        a = content(w, f.dim)
        out[a] = out.get(a, 0) + c
    return CommSeries(f.dim, f.trunc, out)


def symmetrize(f):
    """The map ``s``: ``x^a / a!`` goes to the sum of all words of content ``a``."""
    out = {}
    for a, c in f.items():
        scaled = c * multi_factorial(a)
        for w in words_of_content(a):
            out[w] = scaled
    return NCSeries(f.dim, f.trunc, out)


def power_sequence(s, a):
    if a < 0:
        raise InvalidArgument("power must be non-negative")
    return s ** a


def multiplicative_rhs(s_a, s_b, f):
    """Right side of the multiplicative-sequence identity at word ``f``.

    ``s_a`` and ``s_b`` are two powers of one series.  The sum runs over
    all ``m + 1`` split points of ``f``, including the empty suffix.
    """
    f = tuple(f)
    return sum((s_a[f[:i]] * s_b[f[i:]] for i in range(len(f) + 1)), Fraction(0))
