"""Exact scalars and the shared combinatorial generators.

Everything here is a pure function of its arguments.  Scalars are
:class:`fractions.Fraction`; integer results are returned as ``int``
where that is the natural type (counts, signs, Möbius values).
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb, factorial as _factorial

from . import kernels

Rational = Fraction


class InvalidArgument(ValueError):
    """An operation was called outside its precondition."""


class InvariantError(AssertionError):
    """A computed result failed its own post-hoc verification."""


def as_rational(value):
    """Coerce ints, Fractions and ``"p/q"`` strings to :class:`Fraction`."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidArgument(f"not a rational: {value!r}")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise InvalidArgument(f"not an exact rational: {value!r}")


# ---------------------------------------------------------------- factorials

def factorial(n):
    if n < 0:
        raise InvalidArgument(f"factorial of negative number {n}")
    return _factorial(n)


def double_factorial(n):
    """``n!! = n (n-2) (n-4) ...``, with ``0!! = (-1)!! = 1``."""
    if n < -1:
        raise InvalidArgument(f"double factorial undefined for {n}")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def binomial(n, k):
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def multinomial(n, parts):
    parts = tuple(parts)
    if any(p < 0 for p in parts) or sum(parts) != n:
        raise InvalidArgument(f"multinomial parts {parts} do not sum to {n}")
    out = factorial(n)
    for p in parts:
        out //= factorial(p)
    return out


def factorials(n):
    """Table ``[0!, 1!, ..., n!]``."""
    if n < 0:
        raise InvalidArgument("n must be >= 0")
    table = [1]
    for i in range(1, n + 1):
        table.append(table[-1] * i)
    return table


def multi_factorial(a):
    """``a! = a_1! ... a_d!`` for a multi-index."""
    out = 1
    for ai in a:
        out *= factorial(ai)
    return out


# ---------------------------------------------------------------- index helpers

def content(word, dim):
    """Multi-index counting how often each colour ``1..dim`` occurs in ``word``."""
    counts = [0] * dim
    for letter in word:
        if not 1 <= letter <= dim:
            raise InvalidArgument(f"letter {letter} outside [1, {dim}]")
        counts[letter - 1] += 1
    return tuple(counts)


def standard_colored_set(a):
    """The standard colored set ``[a]``: elements ``(colour, index)`` in colour order."""
    return tuple((i + 1, j) for i, ai in enumerate(a) for j in range(ai))


def multi_indices(dim, max_degree):
    """All multi-indices of length ``dim`` and total degree <= ``max_degree``, graded order."""
    out = []
    for deg in range(max_degree + 1):
        out.extend(_compositions_of(deg, dim))
    return out


@lru_cache(maxsize=None)
def _compositions_of(total, parts):
    if parts == 0:
        return ((),) if total == 0 else ()
    if parts == 1:
        return ((total,),)
    out = []
    for first in range(total, -1, -1):
        for rest in _compositions_of(total - first, parts - 1):
            out.append((first,) + rest)
    return tuple(out)


def multi_indices_below(a):
    """All ``b`` with ``0 <= b <= a`` componentwise."""
    return list(product(*(range(ai + 1) for ai in a)))


def words(dim, length):
    return list(product(range(1, dim + 1), repeat=length))


def words_upto(dim, max_length):
    out = []
    for n in range(max_length + 1):
        out.extend(words(dim, n))
    return out


def words_of_content(a):
    """Distinct words whose letter counts equal ``a``, in lexicographic order."""
    out = []
    remaining = list(a)
    n = sum(a)
    buf = []

    def rec():
        if len(buf) == n:
            out.append(tuple(buf))
            return
        for i, r in enumerate(remaining):
            if r:
                remaining[i] -= 1
                buf.append(i + 1)
                rec()
                buf.pop()
                remaining[i] += 1

    rec()
    return out


# ---------------------------------------------------------------- matchings and partitions

def enumerate_matchings(ground):
    """Perfect matchings of ``ground`` (a sequence), as tuples of 2-tuples.

    Order is lexicographic with respect to the order of ``ground``.  Odd
    ground sets have no perfect matchings.
    """
    ground = tuple(ground)
    return [tuple((ground[i], ground[j]) for i, j in m) for m in kernels.perfect_matchings(len(ground))]


def enumerate_partitions(ground):
    """Set partitions of ``ground``, each a tuple of blocks in restricted-growth order."""
    ground = tuple(ground)
    return [tuple(tuple(ground[i] for i in block) for block in p) for p in kernels.set_partitions(len(ground))]


def enumerate_opar(seq, blocks=None):
    """Ordered partitions of a linearly ordered sequence into contiguous non-empty blocks.

    With ``blocks`` given, only partitions into exactly that many blocks.
    The empty sequence has one ordered partition (no blocks).
    """
    seq = tuple(seq)
    n = len(seq)
    if n == 0:
        return [()] if blocks in (None, 0) else []
    cut_counts = range(n) if blocks is None else [blocks - 1]
    out = []
    for c in cut_counts:
        if c < 0 or c > n - 1:
            continue
        for cuts in combinations(range(1, n), c):
            bounds = (0,) + cuts + (n,)
            out.append(tuple(seq[bounds[i]:bounds[i + 1]] for i in range(len(bounds) - 1)))
    out.sort(key=lambda p: (len(p), [len(b) for b in p]))
    return out


# ---------------------------------------------------------------- signs

def sign(first, second):
    """``(-1)`` to the number of pairs ``(i, j)`` in ``first x second`` with ``j < i``."""
    first = tuple(first)
    second = tuple(second)
    if set(first) & set(second):
        raise InvalidArgument(f"subsets overlap: {first} and {second}")
    return -1 if kernels.inversions(first, second) % 2 else 1


def sign_multi(*blocks):
    """Sign of the concatenation of pairwise disjoint blocks ``I_1, ..., I_p``."""
    seen = set()
    for b in blocks:
        if seen & set(b):
            raise InvalidArgument(f"blocks are not pairwise disjoint: {blocks}")
        seen |= set(b)
    inv = 0
    for k in range(len(blocks)):
        for l in range(k + 1, len(blocks)):
            inv += kernels.inversions(blocks[k], blocks[l])
    return -1 if inv % 2 else 1


# ---------------------------------------------------------------- posets

@dataclass(frozen=True)
class FinitePoset:
    """A finite partial order given by its full relation matrix.

    ``leq[i][j]`` is true when ``elements[i] <= elements[j]``.  The axioms are
    checked on construction.
    """

    elements: tuple
    leq: tuple

    def __post_init__(self):
        n = len(self.elements)
        if len(set(self.elements)) != n:
            raise InvalidArgument("poset elements must be distinct")
        if len(self.leq) != n or any(len(row) != n for row in self.leq):
            raise InvalidArgument("relation matrix has the wrong shape")
        for i in range(n):
            if not self.leq[i][i]:
                raise InvalidArgument(f"relation not reflexive at {self.elements[i]!r}")
            for j in range(n):
                if i != j and self.leq[i][j] and self.leq[j][i]:
                    raise InvalidArgument(
                        f"relation not antisymmetric: {self.elements[i]!r}, {self.elements[j]!r}")
                if self.leq[i][j]:
                    for k in range(n):
                        if self.leq[j][k] and not self.leq[i][k]:
                            raise InvalidArgument("relation not transitive")

    @classmethod
    def from_relations(cls, elements, relations):
        """Poset generated by pairs ``(p, q)`` meaning ``p <= q`` (reflexive-transitive closure)."""
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        leq = [[i == j for j in range(n)] for i in range(n)]
        for p, q in relations:
            if p not in index or q not in index:
                raise InvalidArgument(f"relation ({p!r}, {q!r}) mentions an unknown element")
            leq[index[p]][index[q]] = True
        for k in range(n):
            for i in range(n):
                if leq[i][k]:
                    for j in range(n):
                        if leq[k][j]:
                            leq[i][j] = True
        return cls(elements, tuple(tuple(r) for r in leq))

    def le(self, p, q):
        return self.leq[self.elements.index(p)][self.elements.index(q)]

    def __len__(self):
        return len(self.elements)

    def product(self, other):
        """Cartesian product with the componentwise order."""
        elems = tuple((p, q) for p in self.elements for q in other.elements)
        n2 = len(other.elements)
        leq = tuple(
            tuple(self.leq[i // n2][j // n2] and other.leq[i % n2][j % n2] for j in range(len(elems)))
            for i in range(len(elems)))
        return FinitePoset(elems, leq)

    def disjoint_union(self, other):
        elems = tuple((0, p) for p in self.elements) + tuple((1, q) for q in other.elements)
        n1 = len(self.elements)
        rows = []
        for i in range(len(elems)):
            row = []
            for j in range(len(elems)):
                if i < n1 and j < n1:
                    row.append(self.leq[i][j])
                elif i >= n1 and j >= n1:
                    row.append(other.leq[i - n1][j - n1])
                else:
                    row.append(False)
            rows.append(tuple(row))
        return FinitePoset(elems, tuple(rows))


def mobius(p):
    """Möbius function of a finite poset as ``{(i, k): mu}`` over element pairs.

    Incomparable and reversed pairs map to 0.  The defining recursion is
    re-verified on the finished table.
    """
    n = len(p.elements)
    leq = p.leq
    # order indices by number of predecessors: a linear extension
    order = sorted(range(n), key=lambda i: sum(leq[j][i] for j in range(n)))
    mu = [[0] * n for _ in range(n)]
    for i in range(n):
        for k in order:
            if not leq[i][k]:
                continue
            if i == k:
                mu[i][k] = 1
            else:
                mu[i][k] = -sum(mu[i][j] for j in range(n) if leq[i][j] and leq[j][k] and j != k)
    for i in range(n):
        for k in range(n):
            if leq[i][k]:
                total = sum(mu[i][j] for j in range(n) if leq[i][j] and leq[j][k])
                if total != (1 if i == k else 0):
                    raise InvariantError(f"Möbius recursion fails at ({p.elements[i]!r}, {p.elements[k]!r})")
    return {(p.elements[i], p.elements[k]): mu[i][k] for i in range(n) for k in range(n)}


def connected_components(p):
    n = len(p.elements)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if not seen[j] and (p.leq[i][j] or p.leq[j][i]):
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def mobius_valuation(p):
    """Sum over connected components of ``mu(min, max)``.

    Every component must have a least and a greatest element.
    """
    mu = mobius(p)
    total = 0
    for comp in connected_components(p):
        lo = [i for i in comp if all(p.leq[i][j] for j in comp)]
        hi = [i for i in comp if all(p.leq[j][i] for j in comp)]
        if not lo or not hi:
            raise InvalidArgument("every component needs a minimum and a maximum")
        total += mu[(p.elements[lo[0]], p.elements[hi[0]])]
    return total


# ---------------------------------------------------------------- groupoids

@dataclass(frozen=True)
class FiniteGroupoidData:
    """Isomorphism-class representatives with the order of each automorphism group."""

    objects: tuple
    automorphism_counts: tuple

    def __post_init__(self):
        if len(self.objects) != len(self.automorphism_counts):
            raise InvalidArgument("one automorphism count per object is required")
        if any(int(c) != c or c < 1 for c in self.automorphism_counts):
            raise InvalidArgument("automorphism counts must be positive integers")


def groupoid_cardinality(g):
    return sum((Fraction(1, c) for c in g.automorphism_counts), Fraction(0))
