"""Set-valued species represented by their structure counts.

A commutative species of type ``d`` is determined, up to the valuation, by
the number of structures on the standard colored set of each content
``a``.  A noncommutative species is determined by its counts on words.
The operations below are computed from their combinatorial definitions
(subsets, set partitions, ordered partitions), never from the series, so
the valuation homomorphism into the series rings is a genuine check.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product

from .comm_series import counts_to_series
from .core import (InvalidArgument, binomial, content, double_factorial, enumerate_matchings,
                   enumerate_opar, enumerate_partitions, factorial, multi_factorial, multi_indices,
                   standard_colored_set, words_of_content, words_upto)
from .nc_series import NCSeries


def _check_index(a, dim):
    a = tuple(a)
    if len(a) != dim or any(e < 0 for e in a):
        raise InvalidArgument(f"multi-index {a} does not fit dimension {dim}")
    return a


def _check_word(w, dim):
    w = tuple(w)
    if any(not 1 <= letter <= dim for letter in w):
        raise InvalidArgument(f"word {w} has a letter outside [1, {dim}]")
    return w


class CommSpecies:
    """A commutative species given by ``counts(a)``, optionally with explicit structures."""

    def __init__(self, dim, counts, structures=None, name=None):
        self.dim = dim
        self._counts = counts
        self._structures = structures
        self.name = name
        self._cache = {}

    @classmethod
    def from_table(cls, dim, table, name=None):
        """Counts from a finite table; contents not listed have no structures."""
        table = {_check_index(a, dim): v for a, v in table.items()}
        return cls(dim, lambda a: table.get(a, 0), name=name)

    def count(self, a):
        a = _check_index(a, self.dim)
        if a not in self._cache:
            self._cache[a] = self._counts(a)
        return self._cache[a]

    def structures(self, a):
        if self._structures is None:
            raise InvalidArgument(f"species {self.name or '?'} has no structure enumerator")
        return self._structures(_check_index(a, self.dim))

    def valuation(self, trunc):
        """``sum F[a] x^a / a!`` up to total degree ``trunc``."""
        return counts_to_series({a: self.count(a) for a in multi_indices(self.dim, trunc)}, self.dim, trunc)

    def _same_dim(self, other):
        if not isinstance(other, CommSpecies) or other.dim != self.dim:
            raise InvalidArgument("species must share a dimension")

    def __add__(self, other):
        self._same_dim(other)
        return CommSpecies(self.dim, lambda a: self.count(a) + other.count(a))

    def __mul__(self, other):
        self._same_dim(other)
        return CommSpecies(self.dim, lambda a: _comm_product_count(self, other, a))

    def __repr__(self):
        return f"CommSpecies(dim={self.dim}, name={self.name!r})"


class NCSpecies:
    """A noncommutative species given by ``counts(word)``."""

    def __init__(self, dim, counts, name=None):
        self.dim = dim
        self._counts = counts
        self.name = name
        self._cache = {}

    @classmethod
    def from_table(cls, dim, table, name=None):
        table = {_check_word(w, dim): v for w, v in table.items()}
        return cls(dim, lambda w: table.get(w, 0), name=name)

    def count(self, w):
        w = _check_word(w, self.dim)
        if w not in self._cache:
            self._cache[w] = self._counts(w)
        return self._cache[w]

    def valuation(self, trunc):
        return NCSeries(self.dim, trunc, {w: self.count(w) for w in words_upto(self.dim, trunc)})

    def _same_dim(self, other):
        if not isinstance(other, NCSpecies) or other.dim != self.dim:
            raise InvalidArgument("species must share a dimension")

    def __add__(self, other):
        self._same_dim(other)
        return NCSpecies(self.dim, lambda w: self.count(w) + other.count(w))

    def __mul__(self, other):
        self._same_dim(other)
        return NCSpecies(self.dim, lambda w: sum(self.count(w[:k]) * other.count(w[k:]) for k in range(len(w) + 1)))

    def __repr__(self):
        return f"NCSpecies(dim={self.dim}, name={self.name!r})"


# ---------------------------------------------------------------- commutative operations

def _comm_product_count(f, g, a):
    """``sum over subsets y of [a]`` of ``F(y) G([a] - y)``."""
    ground = standard_colored_set(a)
    total = 0
    for k in range(len(ground) + 1):
        for sub in combinations(range(len(ground)), k):
            chosen = [0] * f.dim
            for idx in sub:
                chosen[ground[idx][0] - 1] += 1
            chosen = tuple(chosen)
            rest = tuple(x - y for x, y in zip(a, chosen))
            total += f.count(chosen) * g.count(rest)
    return total


def _content_of(block, dim):
    return content([elem[0] for elem in block], dim)


def comm_sum(f, g):
    return f + g


def comm_product(f, g):
    return f * g


def comm_compose(f, gs):
    """``F(G_1, ..., G_d)``: set partitions of ``[a]`` with a colour on each block."""
    gs = tuple(gs)
    if len(gs) != f.dim:
        raise InvalidArgument(f"need {f.dim} species to substitute, got {len(gs)}")
    if not gs:
        return f
    dim = gs[0].dim
    if any(g.dim != dim for g in gs):
        raise InvalidArgument("substituted species must share a dimension")
    for i, g in enumerate(gs, 1):
        if g.count((0,) * dim):
            raise InvalidArgument(f"species {i} has structures on the empty set")

    def counts(a):
        if not any(a):
            return f.count((0,) * f.dim)
        total = 0
        for part in enumerate_partitions(standard_colored_set(a)):
            blocks = [_content_of(b, dim) for b in part]
            for colours in product(range(1, f.dim + 1), repeat=len(blocks)):
                term = f.count(content(colours, f.dim))
                if not term:
                    continue
                for c, b in zip(colours, blocks):
                    term *= gs[c - 1].count(b)
                    if not term:
                        break
                total += term
        return total

    return CommSpecies(dim, counts)


def comm_derivative(f, i):
    """``dF(x, f) = F(x + {*}, f + {(*, i)})``."""
    if not 1 <= i <= f.dim:
        raise InvalidArgument(f"colour {i} outside [1, {f.dim}]")
    return CommSpecies(f.dim, lambda a: f.count(a[:i - 1] + (a[i - 1] + 1,) + a[i:]))


# ---------------------------------------------------------------- noncommutative operations

def nc_sum(f, g):
    return f + g


def nc_product(f, g):
    return f * g


def nc_compose(f, gs):
    """Ordered partitions into contiguous blocks with a colour on each block."""
    gs = tuple(gs)
    if len(gs) != f.dim:
        raise InvalidArgument(f"need {f.dim} species to substitute, got {len(gs)}")
    if not gs:
        return f
    dim = gs[0].dim
    if any(g.dim != dim for g in gs):
        raise InvalidArgument("substituted species must share a dimension")
    for i, g in enumerate(gs, 1):
        if g.count(()):
            raise InvalidArgument(f"species {i} has structures on the empty set")

    def counts(w):
        if not w:
            return f.count(())
        total = 0
        for part in enumerate_opar(w):
            for colours in product(range(1, f.dim + 1), repeat=len(part)):
                term = f.count(colours)
                if not term:
                    continue
                for c, b in zip(colours, part):
                    term *= gs[c - 1].count(b)
                    if not term:
                        break
                total += term
        return total

    return NCSpecies(dim, counts)


def nc_derivative(f, i):
    """Sum over the ``|w| + 1`` ways of placing a new point of colour ``i`` in the order."""
    if not 1 <= i <= f.dim:
        raise InvalidArgument(f"colour {i} outside [1, {f.dim}]")
    return NCSpecies(f.dim, lambda w: sum(f.count(w[:p] + (i,) + w[p:]) for p in range(len(w) + 1)))


def shuffle(f, g):
    """``Sh(F, G)``: subsets of the ordered set with the induced orders on both parts."""
    if f.dim != g.dim:
        raise InvalidArgument("species must share a dimension")

    def counts(w):
        n = len(w)
        total = 0
        for k in range(n + 1):
            for sub in combinations(range(n), k):
                chosen = set(sub)
                left = tuple(w[p] for p in range(n) if p in chosen)
                right = tuple(w[p] for p in range(n) if p not in chosen)
                total += f.count(left) * g.count(right)
        return total

    return NCSpecies(f.dim, counts)


# ---------------------------------------------------------------- S and Pi

def S_functor(f):
    """``SF(x, <=, f) = F(x, f)``: forget the order."""
    return NCSpecies(f.dim, lambda w: f.count(content(w, f.dim)))


def Pi_functor(f):
    """``PiF(x, f)``: sum of ``F`` over all linear orders of ``x``.

    The orders of the standard colored set ``[a]`` that spell a given word
    number ``a!``, so the sum collapses onto the words of content ``a``.
    """
    return CommSpecies(f.dim, lambda a: multi_factorial(a) * sum(f.count(w) for w in words_of_content(a)))


def Pi_functor_literal(f, a):
    """``PiF([a])`` by brute force over all ``|a|!`` linear orders."""
    ground = standard_colored_set(a)
    return sum(f.count(tuple(e[0] for e in order)) for order in permutations(ground))


# ---------------------------------------------------------------- virtual species

@dataclass(frozen=True)
class VirtualSpecies:
    """A formal difference ``pos - neg`` of two commutative species."""

    pos: CommSpecies
    neg: CommSpecies

    def __post_init__(self):
        if self.pos.dim != self.neg.dim:
            raise InvalidArgument("both halves of a virtual species need the same dimension")

    @property
    def dim(self):
        return self.pos.dim

    def count(self, a):
        return self.pos.count(a) - self.neg.count(a)

    def valuation(self, trunc):
        return self.pos.valuation(trunc) - self.neg.valuation(trunc)

    def __add__(self, other):
        return VirtualSpecies(self.pos + other.pos, self.neg + other.neg)

    def __mul__(self, other):
        return VirtualSpecies(self.pos * other.pos + self.neg * other.neg,
                              self.pos * other.neg + self.neg * other.pos)

    def negative(self):
        return VirtualSpecies(self.neg, self.pos)

    __neg__ = negative


def virtual(f, g=None):
    """``(F, G)``; with one argument, ``(F, 0)``."""
    if g is None:
        g = zero_species(f.dim)
    return VirtualSpecies(f, g)


# ---------------------------------------------------------------- builtins

def zero_species(dim):
    return CommSpecies(dim, lambda a: 0, name="0")


def singleton(dim, i):
    if not 1 <= i <= dim:
        raise InvalidArgument(f"colour {i} outside [1, {dim}]")
    unit = tuple(1 if j == i - 1 else 0 for j in range(dim))
    return CommSpecies(dim, lambda a: 1 if a == unit else 0, name=f"X{i}")


def one_species(dim):
    return CommSpecies(dim, lambda a: 0 if any(a) else 1, name="One")


def exponential(dim):
    return CommSpecies(dim, lambda a: 1, name="E")


def matchings_species(dim=1):
    def structures(a):
        return enumerate_matchings(standard_colored_set(a))

    def counts(a):
        n = sum(a)
        return 0 if n % 2 else double_factorial(n - 1)

    return CommSpecies(dim, counts, structures=structures, name="M")


def partitions_species(dim=1):
    def structures(a):
        return enumerate_partitions(standard_colored_set(a))

    return CommSpecies(dim, lambda a: len(structures(a)), structures=structures, name="par")


def adn_count(a):
    """Ordered restricted matchings on ``A + T + C + G`` of content ``a = (|A|, |T|, |C|, |G|)``.

    Column ``i`` of the matching holds an A-T pair or a C-G pair in either
    orientation, so the count is ``C(p+q, p) 2^(p+q) p!^2 q!^2`` when
    ``|A| = |T| = p`` and ``|C| = |G| = q``.
    """
    na, nt, nc, ng = a
    if na != nt or nc != ng:
        return 0
    p, q = na, nc
    return binomial(p + q, p) * 2 ** (p + q) * factorial(p) ** 2 * factorial(q) ** 2


def adn_structures(a):
    """All bijections ``alpha: {0,1} x [n] -> A + T + C + G`` obeying the pairing rule."""
    ground = standard_colored_set(a)
    if len(ground) % 2:
        return []
    n = len(ground) // 2
    partner = {1: 2, 2: 1, 3: 4, 4: 3}
    out = []
    for image in permutations(ground):
        # image[2i] = alpha(0, i), image[2i + 1] = alpha(1, i)
        if all(partner[image[2 * i][0]] == image[2 * i + 1][0] for i in range(n)):
            out.append(tuple(image))
    return out


def adn_species():
    return CommSpecies(4, adn_count, structures=adn_structures, name="ADN")


def nc_singleton(dim, i):
    if not 1 <= i <= dim:
        raise InvalidArgument(f"colour {i} outside [1, {dim}]")
    return NCSpecies(dim, lambda w: 1 if w == (i,) else 0, name=f"X{i}")


def nc_one(dim):
    return NCSpecies(dim, lambda w: 0 if w else 1, name="One")


def nc_ne(dim):
    """``NE_d``: exactly one structure on every ordered colored set."""
    return NCSpecies(dim, lambda w: 1, name="NE")


BUILTINS = ("X", "One", "E", "NE", "M", "par", "ADN")


def builtin(name, dim=1, i=1):
    """Look up a built-in species; ``NE`` is noncommutative, the rest commutative."""
    if name == "X":
        return singleton(dim, i)
    if name == "One":
        return one_species(dim)
    if name == "E":
        return exponential(dim)
    if name == "NE":
        return nc_ne(dim)
    if name == "M":
        return matchings_species(dim)
    if name == "par":
        return partitions_species(dim)
    if name == "ADN":
        return adn_species()
    raise InvalidArgument(f"unknown species {name!r}; known: {', '.join(BUILTINS)}")


# ---------------------------------------------------------------- trees

@dataclass(frozen=True)
class ColoredTree:
    """A rooted tree; every non-root vertex points to its parent.

    ``labels[v]`` is the colour of a leaf or the label ``l(v)`` of an
    internal vertex.  ``children`` lists each vertex's children, in planar
    order when the tree is planar.
    """

    parent: tuple
    labels: tuple
    leaf: tuple
    children: tuple

    @property
    def root(self):
        return self.parent.index(None)

    def __post_init__(self):
        n = len(self.parent)
        if self.parent.count(None) != 1:
            raise InvalidArgument("a rooted tree has exactly one root")
        for v in range(n):
            seen = set()
            u = v
            while self.parent[u] is not None:
                if u in seen:
                    raise InvalidArgument("parent pointers contain a cycle")
                seen.add(u)
                u = self.parent[u]

    def leaf_word(self):
        """Leaf colours read left to right along the planar order."""
        out = []

        def walk(v):
            if self.leaf[v]:
                out.append(self.labels[v])
            for c in self.children[v]:
                walk(c)

        walk(self.root)
        return tuple(out)

    def child_colours(self, v):
        return tuple(self.labels[c] for c in self.children[v])


def _tree_from_form(form):
    parent, labels, leaf, children = [], [], [], []

    def build(node, up):
        v = len(parent)
        parent.append(up)
        labels.append(node[1])
        leaf.append(node[0] == "L")
        children.append([])
        if node[0] == "N":
            for sub in node[2]:
                children[v].append(build(sub, v))
        return v

    build(form, None)
    return ColoredTree(tuple(parent), tuple(labels), tuple(leaf), tuple(tuple(c) for c in children))


def tree_automorphisms(tree):
    """Count automorphisms of a non-planar rooted tree by backtracking.

    An automorphism fixes the root and preserves parents, leaf/internal
    kind and labels.
    """
    n = len(tree.parent)
    order = [tree.root]
    for v in order:
        order.extend(tree.children[v])
    image = [None] * n
    used = [False] * n

    def rec(pos):
        if pos == n:
            return 1
        v = order[pos]
        up = tree.parent[v]
        if up is None:
            cands = [v]
        else:
            cands = tree.children[image[up]]
        total = 0
        for w in cands:
            if used[w] or tree.leaf[w] != tree.leaf[v] or tree.labels[w] != tree.labels[v]:
                continue
            if len(tree.children[w]) != len(tree.children[v]):
                continue
            used[w] = True
            image[v] = w
            total += rec(pos + 1)
            used[w] = False
            image[v] = None
        return total

    return rec(0)


def planar_trees(root_colour, word, dim):
    """Planar rooted trees with leaves spelling ``word`` and every internal vertex of arity >= 2."""
    word = tuple(word)
    memo = {}

    def forms(c, w):
        key = (c, w)
        if key in memo:
            return memo[key]
        out = []
        if w == (c,):
            out.append(("L", c))
        if len(w) >= 2:
            for part in enumerate_opar(w):
                if len(part) < 2:
                    continue
                for colours in product(range(1, dim + 1), repeat=len(part)):
                    options = [forms(cc, b) for cc, b in zip(colours, part)]
                    for combo in product(*options):
                        out.append(("N", c, tuple(combo)))
        memo[key] = out
        return out

    return [_tree_from_form(f) for f in forms(root_colour, word)]


def unlabelled_trees(root_colour, a):
    """Non-planar rooted trees with leaf content ``a``, internal arity >= 2, one per iso class."""
    a = tuple(a)
    dim = len(a)
    memo = {}

    def below(b):
        return [c for c in multi_indices(dim, sum(b)) if any(c) and all(x <= y for x, y in zip(c, b))]

    def forms(c, b):
        key = (c, b)
        if key in memo:
            return memo[key]
        out = []
        if sum(b) == 1 and b[c - 1] == 1:
            out.append(("L", c))
        if sum(b) >= 2:
            cands = []
            for sub in below(b):
                if sub == b:
                    continue
                for cc in range(1, dim + 1):
                    for f in forms(cc, sub):
                        cands.append((f, sub))
            cands.sort(key=lambda t: repr(t[0]))

            def rec(start, remaining, chosen):
                if not any(remaining):
                    if len(chosen) >= 2:
                        out.append(("N", c, tuple(chosen)))
                    return
                for idx in range(start, len(cands)):
                    f, sub = cands[idx]
                    if all(x <= y for x, y in zip(sub, remaining)):
                        rec(idx, tuple(y - x for x, y in zip(sub, remaining)), chosen + [f])

            rec(0, b, [])
        memo[key] = out
        return out

    return [_tree_from_form(f) for f in forms(root_colour, a)]


def tree_inverse_check(fs, order, planar):
    """Coefficients of the compositional inverse of ``X - |F|`` computed by trees.

    ``fs`` holds one species per colour, each vanishing on sets of size <= 1.
    Planar (noncommutative): ``{(i, word): coeff}`` as a sum over planar
    trees of the product of ``F_{l(v)}`` counts on the child colours.
    Commutative: ``{(i, a): coeff}`` of the plain monomial ``x^a``, a sum over
    isomorphism classes weighted by ``1 / |Aut|``.
    """
    fs = tuple(fs)
    dim = len(fs)
    for f in fs:
        small = [()] + [(c,) for c in range(1, dim + 1)] if planar else \
            [(0,) * dim] + [tuple(1 if j == c else 0 for j in range(dim)) for c in range(dim)]
        if any(f.count(s) for s in small):
            raise InvalidArgument("tree inversion needs species vanishing on sizes <= 1")
    table = {}
    for i in range(1, dim + 1):
        if planar:
            for w in words_upto(dim, order):
                if not w:
                    continue
                total = 0
                for t in planar_trees(i, w, dim):
                    weight = 1
                    for v in range(len(t.parent)):
                        if not t.leaf[v]:
                            weight *= fs[t.labels[v] - 1].count(t.child_colours(v))
                    total += weight
                table[(i, w)] = Fraction(total)
        else:
            for a in multi_indices(dim, order):
                if not any(a):
                    continue
                total = Fraction(0)
                for t in unlabelled_trees(i, a):
                    weight = 1
                    for v in range(len(t.parent)):
                        if not t.leaf[v]:
                            weight *= fs[t.labels[v] - 1].count(content(t.child_colours(v), dim))
                    total += Fraction(weight, tree_automorphisms(t))
                table[(i, a)] = total
    return table
