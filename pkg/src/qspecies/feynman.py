"""Gaussian moments, flag graphs and the Feynman graph expansion.

Moments are normalized: the Gaussian weight has covariance matrix ``a`` and
total mass 1, so only the combinatorial part of each integral appears.

The graph expansion of ``<x_w exp(Pert S)>`` sums over isomorphism classes
of flag graphs whose external legs are fixed unary vertices.  An internal
vertex whose flags carry colours of content ``t`` contributes
``S[t] * t! / |t|!``, each edge contributes a propagator entry, and each
class is weighted by ``prod g_|v| / |Aut|``.  :func:`wick_oracle` computes
the same quantity directly from the series and the moments.
"""
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial

from . import _format
from .core import InvalidArgument, as_rational, content, multi_factorial


# ---------------------------------------------------------------- covariance and moments

@dataclass(frozen=True)
class CovarianceModel:
    dim: int
    a: tuple

    def __post_init__(self):
        rows = tuple(tuple(as_rational(v) for v in row) for row in self.a)
        if len(rows) != self.dim or any(len(r) != self.dim for r in rows):
            raise InvalidArgument(f"covariance must be {self.dim} x {self.dim}")
        for i in range(self.dim):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise InvalidArgument("covariance must be symmetric")
        object.__setattr__(self, "a", rows)

    @classmethod
    def identity(cls, dim):
        return cls(dim, tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)))

    def entry(self, i, j):
        """Propagator between colours ``i`` and ``j`` (1-based)."""
        return self.a[i - 1][j - 1]


def gaussian_moment(word, cov):
    """``<x_{w_1} ... x_{w_n}>``, the sum over perfect matchings of the positions.

    The matching sum depends only on the content of the word, so it is
    evaluated by :func:`moment_by_content` instead of listing the
    ``(n-1)!!`` matchings.
    """
    return moment_by_content(content(tuple(word), cov.dim), cov)


def moment_by_content(c, cov, _memo=None):
    """``<x^c>`` by the Gaussian integration-by-parts recursion.

    ``<x_i x^b> = sum_j a_ij b_j <x^(b - e_j)>``; independent of matchings.
    """
    memo = {} if _memo is None else _memo
    c = tuple(c)
    if c in memo:
        return memo[c]
    if not any(c):
        return Fraction(1)
    if sum(c) % 2:
        return Fraction(0)
    i = next(k for k, e in enumerate(c) if e)
    b = list(c)
    b[i] -= 1
    total = Fraction(0)
    for j in range(cov.dim):
        if b[j] and cov.a[i][j]:
            rest = list(b)
            rest[j] -= 1
            total += cov.a[i][j] * b[j] * moment_by_content(tuple(rest), cov, memo)
    memo[c] = total
    return total


# ---------------------------------------------------------------- coupling series

def _g_mono(pairs):
    out = {}
    for k, e in pairs:
        if e:
            out[k] = out.get(k, 0) + e
    return tuple(sorted(out.items()))


def _g_order(mono):
    return sum(e for _, e in mono)


class CouplingSeries:
    """Polynomial in ``x_1..x_d`` and couplings ``g_k`` with rational coefficients.

    Keys are ``(a, g)`` where ``g`` is a sorted tuple of ``(k, exponent)``.
    ``order`` bounds the total coupling degree; ``None`` means no bound.
    """

    __slots__ = ("dim", "order", "_coeffs")

    def __init__(self, dim, coeffs=None, order=None):
        self.dim = dim
        self.order = order
        clean = {}
        for (a, g), c in (coeffs or {}).items():
            a = tuple(a)
            if len(a) != dim:
                raise InvalidArgument(f"exponent {a} does not fit dimension {dim}")
            g = _g_mono(g)
            if order is not None and _g_order(g) > order:
                continue
            c = as_rational(c)
            if c:
                clean[(a, g)] = clean.get((a, g), 0) + c
        self._coeffs = {k: v for k, v in clean.items() if v}

    def items(self):
        return self._coeffs.items()

    def __getitem__(self, key):
        a, g = key
        return self._coeffs.get((tuple(a), _g_mono(g)), Fraction(0))

    def coupling_part(self, g):
        """Coefficient of the coupling monomial ``g`` in an x-free series."""
        return self[((0,) * self.dim, g)]

    def homogeneous(self, n):
        return CouplingSeries(self.dim, {k: v for k, v in self._coeffs.items() if _g_order(k[1]) == n},
                              order=self.order)

    def __add__(self, other):
        if other.dim != self.dim:
            raise InvalidArgument("dimension mismatch")
        orders = [o for o in (self.order, other.order) if o is not None]
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, 0) + v
        return CouplingSeries(self.dim, out, order=min(orders) if orders else None)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CouplingSeries(self.dim, {k: v * other for k, v in self._coeffs.items()}, order=self.order)
        if other.dim != self.dim:
            raise InvalidArgument("dimension mismatch")
        orders = [o for o in (self.order, other.order) if o is not None]
        order = min(orders) if orders else None
        out = {}
        for (a, g), u in self._coeffs.items():
            for (b, h), v in other._coeffs.items():
                gh = _g_mono(g + h)
                if order is not None and _g_order(gh) > order:
                    continue
                key = (tuple(x + y for x, y in zip(a, b)), gh)
                out[key] = out.get(key, 0) + u * v
        return CouplingSeries(self.dim, out, order=order)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CouplingSeries):
            return NotImplemented
        return self.dim == other.dim and self._coeffs == other._coeffs

    __hash__ = None

    def sorted_terms(self):
        return sorted(self._coeffs.items(),
                      key=lambda t: (_g_order(t[0][1]), t[0][1], sum(t[0][0]), t[0][0]), reverse=True)

    def format(self):
        names = _format.var_names("x", self.dim)
        terms = []
        for (a, g), c in self.sorted_terms():
            factors = list(zip(names, a)) + [(f"g{k}", e) for k, e in g]
            terms.append((c, _format.monomial(factors)))
        return _format.join_terms(terms)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"CouplingSeries(dim={self.dim}, {self.format()!s})"

    def to_json(self):
        terms = [{"exp": list(a), "g": [list(p) for p in g], "num": str(c.numerator), "den": str(c.denominator)}
                 for (a, g), c in sorted(self._coeffs.items())]
        return {"dim": self.dim, "order": self.order, "terms": terms}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["dim"],
                   {(tuple(t["exp"]), tuple(tuple(p) for p in t["g"])): Fraction(int(t["num"]), int(t["den"]))
                    for t in data["terms"]},
                   order=data.get("order"))


def pert_map(f):
    """``sum f_a x^a  ->  sum f_a x^a g_|a| / |a|!``."""
    return CouplingSeries(f.dim, {(a, ((sum(a), 1),)): c / factorial(sum(a)) for a, c in f.items()})


# ---------------------------------------------------------------- flag graphs

@dataclass(frozen=True)
class FlagGraph:
    """Flags ``0..flags-1`` partitioned into vertices and matched into edges.

    The first ``legs`` flags are the external legs; each sits alone in a
    unary vertex and is fixed by every isomorphism.
    """

    flags: int
    vertices: tuple
    edges: tuple
    legs: int = 0

    def __post_init__(self):
        seen = sorted(f for v in self.vertices for f in v)
        if seen != list(range(self.flags)):
            raise InvalidArgument("vertices must partition the flags")
        matched = sorted(f for e in self.edges for f in e)
        if any(len(e) != 2 for e in self.edges) or len(set(matched)) != len(matched):
            raise InvalidArgument("edges must be disjoint pairs of flags")
        for i in range(self.legs):
            if (i,) not in self.vertices:
                raise InvalidArgument(f"leg {i} must be a unary vertex")

    def internal_vertices(self):
        return [v for v in self.vertices if not (len(v) == 1 and v[0] < self.legs)]

    def degrees(self):
        return sorted(len(v) for v in self.internal_vertices())

    def to_json(self, aut=None):
        out = {"flags": self.flags, "vertices": [list(v) for v in self.vertices],
               "edges": [list(e) for e in self.edges]}
        if aut is not None:
            out["aut"] = aut
        return out


def _multigraphs(degrees):
    """All symmetric multiplicity matrices with the given vertex degrees.

    ``m[u][u]`` counts self-loops at ``u``; each uses two of its flags.
    """
    n = len(degrees)
    m = [[0] * n for _ in range(n)]
    rem = list(degrees)
    out = []

    def row(u):
        if u == n:
            out.append(tuple(tuple(r) for r in m))
            return
        for k in range(rem[u] // 2 + 1):
            m[u][u] = k
            rem[u] -= 2 * k
            rest(u, u + 1)
            rem[u] += 2 * k
            m[u][u] = 0

    def rest(u, v):
        if v == n:
            if rem[u] == 0:
                row(u + 1)
            return
        for k in range(min(rem[u], rem[v]) + 1):
            m[u][v] = m[v][u] = k
            rem[u] -= k
            rem[v] -= k
            rest(u, v + 1)
            rem[u] += k
            rem[v] += k
            m[u][v] = m[v][u] = 0

    row(0)
    return out


def _symmetry_group(degrees, legs):
    """Permutations of vertex positions that fix legs and preserve internal degrees."""
    n = len(degrees)
    groups = {}
    for v in range(legs, n):
        groups.setdefault(degrees[v], []).append(v)
    perms = [list(range(n))]
    for members in groups.values():
        new = []
        for base in perms:
            for img in permutations(members):
                p = list(base)
                for src, dst in zip(members, img):
                    p[src] = dst
                new.append(p)
        perms = new
    return perms


def _permute(m, p):
    n = len(m)
    inv = [0] * n
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(tuple(m[inv[i]][inv[j]] for j in range(n)) for i in range(n))


def _to_flag_graph(m, degrees, legs):
    n = len(degrees)
    vertices = []
    nxt = 0
    for d in degrees:
        vertices.append(list(range(nxt, nxt + d)))
        nxt += d
    free = [list(v) for v in vertices]
    edges = []
    for u in range(n):
        for _ in range(m[u][u]):
            edges.append((free[u].pop(0), free[u].pop(0)))
        for v in range(u + 1, n):
            for _ in range(m[u][v]):
                edges.append((free[u].pop(0), free[v].pop(0)))
    return FlagGraph(nxt, tuple(tuple(v) for v in vertices), tuple(edges), legs)


def enumerate_graphs(legs, vertex_degrees):
    """Isomorphism classes of flag graphs with ``legs`` external legs and these internal degrees.

    ``legs`` may be a count or a word (only its length matters here).
    Returns ``[(graph, |Aut|)]`` in a canonical order.
    """
    nlegs = legs if isinstance(legs, int) else len(tuple(legs))
    internal = sorted(vertex_degrees)
    if any(d < 1 for d in internal):
        raise InvalidArgument("vertex degrees must be positive")
    degrees = [1] * nlegs + internal
    if sum(degrees) % 2:
        return []
    group = _symmetry_group(degrees, nlegs)
    classes = {}
    for m in _multigraphs(degrees):
        canon = min(_permute(m, p) for p in group)
        if canon not in classes:
            classes[canon] = None
    out = []
    for canon in sorted(classes):
        vertex_auts = sum(1 for p in group if _permute(canon, p) == canon)
        aut = vertex_auts
        n = len(degrees)
        for u in range(n):
            aut *= 2 ** canon[u][u] * factorial(canon[u][u])
            for v in range(u + 1, n):
                aut *= factorial(canon[u][v])
        out.append((_to_flag_graph(canon, degrees, nlegs), aut))
    return out


def degree_multisets(allowed, order):
    """Non-decreasing tuples of ``order`` degrees drawn from ``allowed``."""
    allowed = sorted(set(allowed))
    out = []

    def rec(start, chosen):
        if len(chosen) == order:
            out.append(tuple(chosen))
            return
        for i in range(start, len(allowed)):
            rec(i, chosen + [allowed[i]])

    rec(0, [])
    return out


def enumerate_graphs_upto(legs, allowed_degrees, max_order):
    """All classes with at most ``max_order`` internal vertices of the allowed degrees."""
    out = []
    for n in range(max_order + 1):
        for degs in degree_multisets(allowed_degrees, n):
            out.extend(enumerate_graphs(legs, degs))
    return out


def flag_automorphisms(graph):
    """Count flag permutations preserving vertices and edges and fixing legs, by backtracking."""
    n = graph.flags
    vertex_of = {}
    for idx, v in enumerate(graph.vertices):
        for f in v:
            vertex_of[f] = idx
    partner = {}
    for p, q in graph.edges:
        partner[p] = q
        partner[q] = p
    size = [len(v) for v in graph.vertices]
    image = [None] * n
    used = [False] * n
    vmap = {}
    vcount = {}

    def rec(f):
        if f == n:
            return 1
        total = 0
        cands = [f] if f < graph.legs else range(graph.legs, n)
        for g in cands:
            if used[g]:
                continue
            u, w = vertex_of[f], vertex_of[g]
            if size[u] != size[w]:
                continue
            if u in vmap and vmap[u] != w:
                continue
            if u not in vmap and w in vcount:
                continue
            if (f in partner) != (g in partner):
                continue
            if f in partner and image[partner[f]] is not None and image[partner[f]] != partner[g]:
                continue
            fresh = u not in vmap
            if fresh:
                vmap[u] = w
                vcount[w] = u
            used[g] = True
            image[f] = g
            total += rec(f + 1)
            image[f] = None
            used[g] = False
            if fresh:
                del vmap[u]
                del vcount[w]
        return total

    return rec(0)


# ---------------------------------------------------------------- expansion

def _check_interaction(s):
    for a, c in s.items():
        if sum(a) <= 2:
            raise InvalidArgument("the interaction must vanish in degrees <= 2")


def graph_value(graph, s, cov, legs):
    """Sum over colourings of the internal flags of vertex factors times propagators."""
    legs = tuple(legs)
    if len(legs) != graph.legs:
        raise InvalidArgument("leg word does not match the graph")
    internal = list(range(graph.legs, graph.flags))
    verts = graph.internal_vertices()
    colour = [0] * graph.flags
    for i, c in enumerate(legs):
        colour[i] = c
    total = Fraction(0)
    for assign in product(range(1, s.dim + 1), repeat=len(internal)):
        for f, c in zip(internal, assign):
            colour[f] = c
        term = Fraction(1)
        for v in verts:
            t = content([colour[f] for f in v], s.dim)
            coeff = s[t]
            if not coeff:
                term = 0
                break
            term *= coeff * multi_factorial(t) / factorial(len(v))
        if not term:
            continue
        for p, q in graph.edges:
            term *= cov.entry(colour[p], colour[q])
            if not term:
                break
        total += term
    return total


def feynman_expand(s, cov, legs, coupling_order):
    """Graph-sum expansion of ``<x_legs exp(Pert S)>`` through ``coupling_order`` vertices."""
    legs = tuple(legs)
    if s.dim != cov.dim:
        raise InvalidArgument("interaction and covariance dimensions differ")
    content(legs, s.dim)
    _check_interaction(s)
    allowed = sorted({sum(a) for a, _ in s.items()})
    out = {}
    zero = (0,) * s.dim
    for n in range(coupling_order + 1):
        for degs in degree_multisets(allowed, n):
            g = _g_mono((d, 1) for d in degs)
            for graph, aut in enumerate_graphs(len(legs), degs):
                val = graph_value(graph, s, cov, legs)
                if val:
                    out[(zero, g)] = out.get((zero, g), 0) + val / aut
    return CouplingSeries(s.dim, out, order=coupling_order)


def _exp_couplings(p, order):
    """``exp(p)`` through coupling order ``order`` for ``p`` of pure order 1."""
    one = CouplingSeries(p.dim, {((0,) * p.dim, ()): 1}, order=order)
    result = one
    term = one
    for n in range(1, order + 1):
        term = (term * p) * Fraction(1, n)
        result = result + term
    return CouplingSeries(p.dim, dict(result.items()), order=order)


def wick_oracle(s, cov, legs, coupling_order):
    """Expand ``exp(Pert S)`` term by term and integrate each monomial against the Gaussian."""
    legs = tuple(legs)
    _check_interaction(s)
    base = content(legs, s.dim)
    expanded = _exp_couplings(pert_map(s), coupling_order)
    memo = {}
    out = {}
    zero = (0,) * s.dim
    for (a, g), c in expanded.items():
        total = tuple(x + y for x, y in zip(a, base))
        m = moment_by_content(total, cov, memo)
        if m:
            out[(zero, g)] = out.get((zero, g), 0) + c * m
    return CouplingSeries(s.dim, out, order=coupling_order)
