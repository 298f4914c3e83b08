"""Admissible graphs, their bidifferential operators and weighted star products.

Aerial vertices are ``1..k``; ground vertex ``j`` is encoded as ``-j``.  An
admissible graph is its target tuple ``(t(1,1), t(1,2), ..., t(k,1), t(k,2))``.
Its canonical string key is ``"k,n:[t(1,1),t(1,2),...]"``, which is also the
key format of weight files.

Weights are data: nothing here computes configuration-space integrals.
"""
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import factorial

from .comm_series import CommSeries, derivative
from .core import InvalidArgument, as_rational


STAR = "*"


class MissingWeight(LookupError):
    """A star-product expansion met a graph with no supplied weight."""


# ---------------------------------------------------------------- graphs

@dataclass(frozen=True)
class AdmissibleGraph:
    k: int
    n: int
    targets: tuple

    def __post_init__(self):
        if self.n < 2:
            raise InvalidArgument("an admissible graph needs at least two ground vertices")
        if self.k < 0 or len(self.targets) != 2 * self.k:
            raise InvalidArgument("each aerial vertex emits exactly two edges")
        for idx, t in enumerate(self.targets):
            v = idx // 2 + 1
            if t == v:
                raise InvalidArgument(f"edge {(v, idx % 2 + 1)} is a loop")
            if not (1 <= t <= self.k or -self.n <= t <= -1):
                raise InvalidArgument(f"edge {(v, idx % 2 + 1)} targets unknown vertex {t}")

    def target(self, v, i):
        return self.targets[2 * (v - 1) + (i - 1)]

    def edges(self):
        """``{(v, i): target}`` with ``i`` in ``{1, 2}``."""
        return {(v, i): self.target(v, i) for v in range(1, self.k + 1) for i in (1, 2)}

    @property
    def key(self):
        return f"{self.k},{self.n}:[{','.join(str(t) for t in self.targets)}]"

    @classmethod
    def from_key(cls, key):
        head, _, body = key.partition(":")
        k, n = (int(p) for p in head.split(","))
        body = body.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise InvalidArgument(f"malformed graph key {key!r}")
        inner = body[1:-1].strip()
        targets = tuple(int(p) for p in inner.split(",")) if inner else ()
        return cls(k, n, targets)

    def has_aerial_target(self):
        return any(t > 0 for t in self.targets)

    def to_digraph(self):
        vertices = tuple(range(1, self.k + 1)) + tuple(-j for j in range(1, self.n + 1))
        return DiGraph(vertices, {(v, i): (v, t) for (v, i), t in self.edges().items()})

    def __str__(self):
        return self.key


def enumerate_admissible(k, n, simple=False):
    """All admissible graphs of type ``(k, n)`` in lexicographic target order.

    The definition allows both edges of a vertex to share a target; with
    ``simple=True`` such double edges are excluded.
    """
    if n < 2:
        raise InvalidArgument("admissible graphs need n >= 2")
    if k < 0:
        raise InvalidArgument("k must be non-negative")
    choices = []
    for v in range(1, k + 1):
        allowed = [-j for j in range(n, 0, -1)] + [u for u in range(1, k + 1) if u != v]
        choices.extend([allowed, allowed])
    out = []
    for targets in product(*choices):
        if simple and any(targets[2 * i] == targets[2 * i + 1] for i in range(k)):
            continue
        out.append(AdmissibleGraph(k, n, tuple(targets)))
    return out


# ---------------------------------------------------------------- subgraphs and quotients

@dataclass(frozen=True)
class DiGraph:
    """A directed multigraph: vertex tuple and ``{edge_id: (source, target)}``."""

    vertices: tuple
    edges: dict

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise InvalidArgument("vertices must be distinct")
        for e, (s, t) in self.edges.items():
            if s not in vs or t not in vs:
                raise InvalidArgument(f"edge {e} leaves the vertex set")

    def includes(self, sub):
        """``sub`` is a subgraph: vertices and edges contained, incidence equal."""
        if not set(sub.vertices) <= set(self.vertices):
            return False
        return all(e in self.edges and self.edges[e] == st for e, st in sub.edges.items())

    def __hash__(self):
        return hash((self.vertices, tuple(sorted(self.edges.items(), key=repr))))


def subgraph(graph, vertices, edges=None):
    """The subgraph on ``vertices`` with the given edges (default: every edge inside)."""
    if isinstance(graph, AdmissibleGraph):
        graph = graph.to_digraph()
    vs = tuple(v for v in graph.vertices if v in set(vertices))
    if edges is None:
        es = {e: st for e, st in graph.edges.items() if st[0] in vs and st[1] in vs}
    else:
        es = {e: graph.edges[e] for e in edges}
    return DiGraph(vs, es)


def quotient(graph, sub):
    """``graph / sub``: contract the vertices of ``sub`` to ``*``.

    Edges with both ends in ``sub`` disappear; any remaining endpoint in
    ``sub`` becomes ``*``.  Sources are redirected as targets are, so the
    result is again a graph on the new vertex set.
    """
    if isinstance(graph, AdmissibleGraph):
        graph = graph.to_digraph()
    if isinstance(sub, AdmissibleGraph):
        sub = sub.to_digraph()
    if not graph.includes(sub):
        raise InvalidArgument("the second graph is not included in the first")
    inside = set(sub.vertices)
    vertices = tuple(v for v in graph.vertices if v not in inside) + (STAR,)
    edges = {}
    for e, (s, t) in graph.edges.items():
        if s in inside and t in inside:
            continue
        edges[e] = (STAR if s in inside else s, STAR if t in inside else t)
    return DiGraph(vertices, edges)


def _as_admissible(q, aerial, ground):
    """Read ``q`` as an admissible graph with the given ordered vertex classes, or ``None``."""
    if len(ground) < 2:
        return None
    if set(aerial) | set(ground) != set(q.vertices):
        return None
    a_index = {v: i + 1 for i, v in enumerate(aerial)}
    g_index = {v: -(j + 1) for j, v in enumerate(ground)}
    targets = []
    out_edges = {}
    for e, (s, t) in q.edges.items():
        if s not in a_index:
            return None
        out_edges.setdefault(s, []).append((e, t))
    for v in aerial:
        es = sorted(out_edges.get(v, []), key=lambda et: repr(et[0]))
        if len(es) != 2:
            return None
        for _, t in es:
            if t == v:
                return None
            targets.append(a_index[t] if t in a_index else g_index[t])
    return AdmissibleGraph(len(aerial), len(ground), tuple(targets))


def _ordered_quotient(gamma, sub, star_first):
    inside = set(sub.vertices)
    q = quotient(gamma, sub)
    aerial = [v for v in range(1, gamma.k + 1) if v not in inside]
    ground = [-j for j in range(1, gamma.n + 1) if -j not in inside]
    ground = [STAR] + ground if star_first else ground + [STAR]
    return _as_admissible(q, aerial, ground)


def _sub_as_admissible(gamma, sub):
    aerial = [v for v in range(1, gamma.k + 1) if v in set(sub.vertices)]
    ground = [-j for j in range(1, gamma.n + 1) if -j in set(sub.vertices)]
    return _as_admissible(sub, aerial, ground), ground


def is_le_L(sub, gamma):
    """``sub <=_L gamma``: a subgraph whose ground vertices form an initial segment."""
    return left_quotient(sub, gamma) is not None


def is_le_R(sub, gamma):
    """``sub <=_R gamma``: a subgraph whose ground vertices form a final segment."""
    return right_quotient(sub, gamma) is not None


def left_quotient(sub, gamma):
    """The admissible quotient ``gamma / sub`` with ``*`` as first ground vertex, or ``None``."""
    return _side_quotient(sub, gamma, left=True)


def right_quotient(sub, gamma):
    """The admissible quotient ``gamma / sub`` with ``*`` as last ground vertex, or ``None``."""
    return _side_quotient(sub, gamma, left=False)


def _side_quotient(sub, gamma, left):
    if isinstance(sub, AdmissibleGraph):
        raise InvalidArgument("pass the subgraph as a DiGraph on gamma's vertex labels")
    dg = gamma.to_digraph()
    if not dg.includes(sub):
        return None
    sub_adm, ground = _sub_as_admissible(gamma, sub)
    if sub_adm is None:
        return None
    s = len(ground)
    expected = [-j for j in range(1, s + 1)] if left else [-j for j in range(gamma.n - s + 1, gamma.n + 1)]
    if ground != expected:
        return None
    return _ordered_quotient(gamma, sub, star_first=left)


# ---------------------------------------------------------------- Poisson structures and B_gamma

@dataclass(frozen=True)
class PoissonStructure:
    dim: int
    alpha: tuple

    def __post_init__(self):
        if len(self.alpha) != self.dim or any(len(r) != self.dim for r in self.alpha):
            raise InvalidArgument(f"alpha must be {self.dim} x {self.dim}")
        for i in range(self.dim):
            if not self.alpha[i][i].is_zero():
                raise InvalidArgument("alpha must vanish on the diagonal")
            for j in range(i):
                if self.alpha[i][j] != -self.alpha[j][i]:
                    raise InvalidArgument("alpha must be antisymmetric")

    @classmethod
    def constant(cls, matrix, trunc=16):
        d = len(matrix)
        rows = tuple(tuple(CommSeries.constant(d, trunc, as_rational(v)) for v in row) for row in matrix)
        return cls(d, rows)

    def is_constant(self):
        return all(sum(a) == 0 for row in self.alpha for e in row for a, _ in e.items())


def _diff(f, indices):
    for i in indices:
        f = derivative(f, i)
    return f


def b_gamma(gamma, alpha, args):
    """Bidifferential (multidifferential) operator of ``gamma`` applied to ``args``.

    Sum over colourings ``I`` of the edges: aerial vertex ``v`` contributes
    ``alpha^{I(v,1) I(v,2)}`` and ground vertex ``j`` contributes ``args[j]``,
    each differentiated along the colours of its incoming edges.
    """
    args = tuple(args)
    if len(args) != gamma.n:
        raise InvalidArgument(f"graph has {gamma.n} ground vertices but {len(args)} arguments")
    d = alpha.dim
    if any(f.dim != d for f in args):
        raise InvalidArgument("arguments must live in the Poisson structure's dimension")
    edges = list(gamma.edges().items())
    incoming = {}
    for idx, (_, t) in enumerate(edges):
        incoming.setdefault(t, []).append(idx)
    total = None
    for colours in product(range(1, d + 1), repeat=len(edges)):
        factors = []
        for v in range(1, gamma.k + 1):
            i, j = colours[2 * (v - 1)], colours[2 * (v - 1) + 1]
            factors.append(_diff(alpha.alpha[i - 1][j - 1], [colours[e] for e in incoming.get(v, [])]))
            if factors[-1].is_zero():
                break
        else:
            for jdx in range(1, gamma.n + 1):
                factors.append(_diff(args[jdx - 1], [colours[e] for e in incoming.get(-jdx, [])]))
                if factors[-1].is_zero():
                    break
            else:
                term = factors[0]
                for fct in factors[1:]:
                    term = term * fct
                total = term if total is None else total + term
    if total is None:
        return CommSeries.zero(d, max(min(f.trunc for f in args) - len(edges), 0))
    return total


# ---------------------------------------------------------------- weights and the star product

class WeightAssignment:
    """Rational weights keyed by canonical graph strings.

    The empty graph of type ``(0, 2)`` has weight 1 unless stated otherwise.
    """

    def __init__(self, weights=None):
        self._w = {}
        for key, v in (weights or {}).items():
            k = key.key if isinstance(key, AdmissibleGraph) else AdmissibleGraph.from_key(key).key
            self._w[k] = as_rational(v)
        self._w.setdefault(AdmissibleGraph(0, 2, ()).key, Fraction(1))

    def __getitem__(self, gamma):
        key = gamma.key if isinstance(gamma, AdmissibleGraph) else gamma
        try:
            return self._w[key]
        except KeyError:
            raise MissingWeight(f"no weight supplied for graph {key}") from None

    def __contains__(self, gamma):
        key = gamma.key if isinstance(gamma, AdmissibleGraph) else gamma
        return key in self._w

    def items(self):
        return self._w.items()

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            data = json.load(fh)
        return cls({k: Fraction(v) if isinstance(v, str) else v for k, v in data.items()})

    def to_json(self):
        return {k: str(v) for k, v in sorted(self._w.items())}


def star_product(f, g, alpha, weights, order):
    """``[c_0, ..., c_order]`` with ``c_n = (1/n!) sum_gamma w_gamma B_gamma(f, g)``.

    Graphs with weight zero are skipped after their weight is looked up,
    so a missing weight is always reported.
    """
    if order < 0:
        raise InvalidArgument("order must be non-negative")
    out = []
    for n in range(order + 1):
        total = None
        for gamma in enumerate_admissible(n, 2):
            w = weights[gamma]
            if not w:
                continue
            term = b_gamma(gamma, alpha, (f, g)).scale(w)
            total = term if total is None else total + term
        if total is None:
            total = CommSeries.zero(f.dim, max(min(f.trunc, g.trunc) - 2 * n, 0))
        out.append(total.scale(Fraction(1, factorial(n))))
    return out


def half_bracket_weights():
    """Order-one weights giving ``f g + (1/2) {f, g} h``."""
    w = {gamma.key: Fraction(1, 2) if gamma.targets == (-1, -2) else 0 for gamma in enumerate_admissible(1, 2)}
    return WeightAssignment(w)


def moyal_weights(order):
    """``2^-n`` on the graph whose every aerial vertex targets ``(1, 2)``; zero elsewhere."""
    w = {}
    for n in range(order + 1):
        special = (-1, -2) * n
        for gamma in enumerate_admissible(n, 2):
            w[gamma.key] = Fraction(1, 2 ** n) if gamma.targets == special else 0
    return WeightAssignment(w)


def poisson_bracket(f, g, alpha):
    """``{f, g} = sum alpha^{ij} d_i f d_j g``."""
    d = alpha.dim
    total = None
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            a = alpha.alpha[i - 1][j - 1]
            if a.is_zero():
                continue
            term = a * derivative(f, i) * derivative(g, j)
            total = term if total is None else total + term
    if total is None:
        return CommSeries.zero(d, max(min(f.trunc, g.trunc) - 1, 0))
    return total


def moyal_product(f, g, matrix, order):
    """Moyal product for a constant bivector, by iterating ``P(u (x) v) = sum a^{ij} d_i u (x) d_j v``.

    Returns ``[c_0, ..., c_order]`` with ``c_n = (1/2)^n / n! * m(P^n(f (x) g))``.
    """
    d = len(matrix)
    mat = [[as_rational(v) for v in row] for row in matrix]
    tensor = [(Fraction(1), f, g)]
    out = []
    for n in range(order + 1):
        total = None
        for c, u, v in tensor:
            term = (u * v).scale(c)
            total = term if total is None else total + term
        if total is None:
            total = CommSeries.zero(d, 0)
        out.append(total.scale(Fraction(1, 2 ** n * factorial(n))))
        if n == order:
            break
        nxt = []
        for c, u, v in tensor:
            for i in range(1, d + 1):
                for j in range(1, d + 1):
                    if mat[i - 1][j - 1]:
                        du, dv = derivative(u, i), derivative(v, j)
                        if not du.is_zero() and not dv.is_zero():
                            nxt.append((c * mat[i - 1][j - 1], du, dv))
        tensor = nxt
    return out
