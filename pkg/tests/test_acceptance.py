"""Acceptance suite: one test per criterion, each reporting a pass/fail line.

Run with ``pytest tests/test_acceptance.py`` (a summary table is printed at
the end of the session) or as a script, ``python tests/test_acceptance.py``.
"""
import functools
import io
import json
import random
import sys
from fractions import Fraction
from itertools import combinations, product
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import ACCEPTANCE  # noqa: E402
from qspecies import comm_series, nc_series, species, super_series  # noqa: E402
from qspecies.cli import main  # noqa: E402
from qspecies.comm_series import CommSeries  # noqa: E402
from qspecies.core import (FiniteGroupoidData, FinitePoset, double_factorial, factorial,  # noqa: E402
                           groupoid_cardinality, mobius, multi_indices, sign, words_upto)
from qspecies.feynman import CovarianceModel, feynman_expand, gaussian_moment, wick_oracle  # noqa: E402
from qspecies.kontsevich import (PoissonStructure, enumerate_admissible, half_bracket_weights,  # noqa: E402
                                 moyal_product, moyal_weights, poisson_bracket, star_product)
from qspecies.nc_series import NCSeries  # noqa: E402
from qspecies.super_series import SuperSeries  # noqa: E402
from qspecies.weyl import WeylElement, exp_element, quantum_binomial, star_mul, star_power  # noqa: E402

TITLES = {
    1: "Gaussian moments",
    2: "Weyl star product",
    3: "quantum binomials",
    4: "exponential identity in W_1",
    5: "ADN species",
    6: "graph expansion equals Wick oracle",
    7: "compositional inverses and trees",
    8: "S / Pi adjunction diagrams",
    9: "sequence convolution identities",
    10: "super ring",
    11: "admissible graphs and weighted star products",
    12: "Möbius and groupoid valuations",
    13: "CLI documented outputs and JSON round trips",
}


def criterion(n):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            try:
                fn()
            except BaseException:
                ACCEPTANCE[n] = (False, TITLES[n])
                print(f"criterion {n:2d}: FAIL  {TITLES[n]}")
                raise
            ACCEPTANCE[n] = (True, TITLES[n])
            print(f"criterion {n:2d}: PASS  {TITLES[n]}")
        return run
    return wrap


def rand_rational(rng):
    return Fraction(rng.randint(-4, 4), rng.randint(1, 3))


def rand_comm(rng, dim, trunc, constant=None, min_degree=0):
    coeffs = {a: rand_rational(rng) for a in multi_indices(dim, trunc) if sum(a) >= min_degree}
    if constant is not None:
        coeffs[(0,) * dim] = constant
    return CommSeries(dim, trunc, coeffs)


def rand_nc(rng, dim, trunc, constant=None):
    coeffs = {w: rand_rational(rng) for w in words_upto(dim, trunc)}
    if constant is not None:
        coeffs[()] = constant
    return NCSeries(dim, trunc, coeffs)


def rand_super(rng, dim, odd, trunc, constant=None, density=0.5):
    thetas = [c for k in range(odd + 1) for c in combinations(range(1, odd + 1), k)]
    coeffs = {(a, t): rand_rational(rng) for a in multi_indices(dim, trunc) for t in thetas
              if rng.random() < density}
    if constant is not None:
        coeffs[((0,) * dim, ())] = constant
    return SuperSeries(dim, odd, trunc, coeffs)


@criterion(1)
def test_criterion_01_gaussian_moments():
    cov = CovarianceModel.identity(1)
    for n in range(9):
        assert gaussian_moment((1,) * (2 * n), cov) == double_factorial(2 * n - 1)
    assert gaussian_moment((1, 1, 1, 1), cov) == 3


@criterion(2)
def test_criterion_02_weyl_star_product():
    N = 16
    X, Y, H = WeylElement.x(1, N), WeylElement.y(1, N), WeylElement.h(1, N)
    p = star_mul(Y ** 4, X ** 3)
    # contraction oracle: k! C(4, k) C(3, k) on x^(3-k) y^(4-k) h^k
    oracle = {((3 - k,), (4 - k,), k): factorial(k) * [1, 4, 6, 4][k] * [1, 3, 3, 1][k] for k in range(4)}
    assert dict(p.items()) == oracle
    assert [p[((2,), (3,), 1)], p[((1,), (2,), 2)], p[((0,), (1,), 3)]] == [12, 36, 24]
    assert star_mul(Y, X) == star_mul(X, Y) + H
    for n in range(11):
        xn, yn = X ** n, Y ** n
        lower_x = WeylElement.monomial(1, N, (n - 1,), (0,), 1, n) if n else 0
        lower_y = WeylElement.monomial(1, N, (0,), (n - 1,), 1, n) if n else 0
        assert star_mul(Y, xn) == WeylElement.monomial(1, N, (n,), (1,)) + lower_x
        assert star_mul(yn, X) == WeylElement.monomial(1, N, (1,), (n,)) + lower_y


@criterion(3)
def test_criterion_03_quantum_binomials():
    X, Y = WeylElement.x(1, 10), WeylElement.y(1, 10)
    for n in range(11):
        p = star_power(X + Y, n)
        for a in range(n + 1):
            for b in range(n + 1 - a):
                if (n - a - b) % 2 == 0:
                    closed = Fraction(factorial(n) * double_factorial(n - a - b - 1),
                                      factorial(a) * factorial(b) * factorial(n - a - b))
                    assert p[((a,), (b,), (n - a - b) // 2)] == closed == quantum_binomial(n, a, b)
    for n in range(12):
        for a in range(n + 2):
            for b in range(n + 2 - a):
                if (n + 1 - a - b) % 2 == 0:
                    assert quantum_binomial(n + 1, a, b) == (quantum_binomial(n, a - 1, b)
                                                             + quantum_binomial(n, a, b - 1)
                                                             + (a + 1) * quantum_binomial(n, a + 1, b))


@criterion(4)
def test_criterion_04_exponential_identity():
    ex, ey, eh = (exp_element(g(1, 8)) for g in (WeylElement.x, WeylElement.y, WeylElement.h))
    assert star_mul(ey, ex) == star_mul(star_mul(ex, ey), eh)
    assert ex.trunc == ey.trunc == eh.trunc == 8


@criterion(5)
def test_criterion_05_adn_species():
    a, t, c, g = (CommSeries.var(4, 6, i) for i in range(1, 5))
    assert species.adn_species().valuation(6) == comm_series.mul_inverse(1 - 2 * a * t - 2 * c * g)


@criterion(6)
def test_criterion_06_graph_expansion():
    covs = {1: CovarianceModel.identity(1),
            2: CovarianceModel(2, ((Fraction(2), Fraction(1, 3)), (Fraction(1, 3), Fraction(1))))}
    interactions = {
        1: [{(3,): 1}, {(4,): 1}, {(3,): 2, (4,): Fraction(-1, 2)}],
        2: [{(3, 0): 1, (1, 2): 1}, {(4, 0): 1, (2, 2): 3, (0, 4): -1}, {(2, 1): 1, (1, 3): 2}],
    }
    for d in (1, 2):
        leg_words = [w for n in range(5) for w in product(range(1, d + 1), repeat=n)]
        for terms in interactions[d]:
            s = CommSeries(d, 8, terms)
            for legs in leg_words:
                for order in range(3):
                    assert feynman_expand(s, covs[d], legs, order) == wick_oracle(s, covs[d], legs, order)
    assert str(feynman_expand(CommSeries(1, 8, {(3,): 1}), covs[1], (), 2).homogeneous(2)) == "5/24 g3^2"
    assert str(feynman_expand(CommSeries(1, 8, {(4,): 1}), covs[1], (), 1).homogeneous(1)) == "1/8 g4"


@criterion(7)
def test_criterion_07_compositional_inverses():
    x = CommSeries.var(1, 6, 1)
    comm = comm_series.comp_inverse([x - x ** 2])[0]
    assert [comm[(n,)] for n in range(1, 6)] == [1, 1, 2, 5, 14]
    y = NCSeries.var(1, 6, 1)
    nc = nc_series.comp_inverse([y - y * y])[0]
    assert [nc[(1,) * n] for n in range(1, 6)] == [1, 1, 2, 5, 14]

    planar = species.tree_inverse_check([species.NCSpecies.from_table(1, {(1, 1): 1})], 5, planar=True)
    assert all(planar[(1, (1,) * n)] == nc[(1,) * n] for n in range(1, 6))
    # x^2 as a species has two structures on a 2-set
    sq = species.CommSpecies.from_table(1, {(2,): 2})
    unlabelled = species.tree_inverse_check([sq], 4, planar=False)
    assert all(unlabelled[(1, (n,))] == comm[(n,)] for n in range(1, 5))

    e2 = species.CommSpecies(1, lambda a: 1 if a[0] >= 2 else 0)
    t = comm_series.comp_inverse([x - e2.valuation(6)])[0]
    e2_trees = species.tree_inverse_check([e2], 4, planar=False)
    assert all(e2_trees[(1, (n,))] == t[(n,)] for n in range(1, 5))


@criterion(8)
def test_criterion_08_adjunction_diagrams():
    rng = random.Random(8)
    T = 5
    for _ in range(10):
        table_c = {a: rng.randint(0, 4) for a in multi_indices(2, T)}
        table_n = {w: rng.randint(0, 4) for w in words_upto(2, T)}
        table_g = {a: rng.randint(0, 4) for a in multi_indices(2, T)}
        f = species.CommSpecies.from_table(2, table_c)
        g = species.CommSpecies.from_table(2, table_g)
        h = species.NCSpecies.from_table(2, table_n)
        assert nc_series.symmetrize(f.valuation(T)) == species.S_functor(f).valuation(T)
        assert nc_series.abelianize(h.valuation(T)) == species.Pi_functor(h).valuation(T)
        ps = species.Pi_functor(species.S_functor(f))
        assert all(ps.count(a) == factorial(sum(a)) * f.count(a) for a in multi_indices(2, T))
        lhs, rhs = species.S_functor(f * g), species.shuffle(species.S_functor(f), species.S_functor(g))
        assert all(lhs.count(w) == rhs.count(w) for w in words_upto(2, T))


@criterion(9)
def test_criterion_09_sequence_identities():
    rng = random.Random(9)
    pairs = [(a, b) for a in range(6) for b in range(6 - a)]
    for _ in range(2):
        s = rand_comm(rng, 2, 5)
        vals = {a: comm_series.polybinomial_values(s, a) for a in range(6)}
        for a, b in pairs:
            for n in multi_indices(2, 5):
                assert vals[a + b].get(n, 0) == comm_series.polybinomial_rhs(vals[a], vals[b], n)

        u = rand_nc(rng, 2, 5, constant=Fraction(1))
        pw = {a: nc_series.power_sequence(u, a) for a in range(6)}
        for a, b in pairs:
            for w in words_upto(2, 5):
                assert pw[a + b][w] == nc_series.multiplicative_rhs(pw[a], pw[b], w)

        v = rand_super(rng, 1, 2, 5, constant=Fraction(1))
        sv = {a: super_series.sequence_values(super_series.power_sequence(v, a)) for a in range(6)}
        thetas = [(), (1,), (2,), (1, 2)]
        for a, b in pairs:
            for n in multi_indices(1, 5):
                for th in thetas:
                    assert sv[a + b].get((n, th), 0) == super_series.multiplicative_rhs(sv[a], sv[b], n, th)


@criterion(10)
def test_criterion_10_super_ring():
    rng = random.Random(10)
    for _ in range(5):
        f, g, h = (rand_super(rng, 1, 3, 3) for _ in range(3))
        assert (f * g) * h == f * (g * h)
    for m in range(1, 7):
        for i in range(1, m + 1):
            t = SuperSeries.theta(1, m, 3, i)
            assert (t * t).is_zero()
    ground = range(1, 7)
    for i in (c for k in range(7) for c in combinations(ground, k)):
        rest = [x for x in ground if x not in i]
        for j in (c for k in range(len(rest) + 1) for c in combinations(rest, k)):
            rest2 = [x for x in rest if x not in j]
            for k in (c for r in range(len(rest2) + 1) for c in combinations(rest2, r)):
                assert sign(i, j) * sign(tuple(sorted(i + j)), k) == sign(j, k) * sign(i, tuple(sorted(j + k)))
    t12 = SuperSeries.theta(1, 2, 4, 1, 2)
    assert super_series.mul_inverse(1 - t12) == 1 + t12
    for _ in range(5):
        f = rand_super(rng, 1, 3, 3, constant=Fraction(1))
        inv = super_series.mul_inverse(f)
        assert f * inv == 1 and inv * f == 1


@criterion(11)
def test_criterion_11_admissible_graphs():
    for k in range(4):
        for n in (2, 3):
            vertices = list(range(1, k + 1)) + [-j for j in range(1, n + 1)]
            brute = {t for t in product(vertices, repeat=2 * k)
                     if all(t[e] != e // 2 + 1 for e in range(2 * k))}
            graphs = enumerate_admissible(k, n)
            assert len(graphs) == len(brute)
            assert {g.targets for g in graphs} == brute

    rng = random.Random(11)
    omega = PoissonStructure.constant([[0, 1], [-1, 0]])

    def poly():
        # degree <= 3, known exactly well past the derivatives taken
        return CommSeries(2, 10, dict(rand_comm(rng, 2, 3).items()))

    for _ in range(5):
        f, g = poly(), poly()
        c0, c1 = star_product(f, g, omega, half_bracket_weights(), 1)
        assert c0 == f * g
        assert c1 == poisson_bracket(f, g, omega) / 2
    for _ in range(5):
        a = rand_rational(rng) or Fraction(1)
        matrix = [[0, a], [-a, 0]]
        f, g = poly(), poly()
        assert star_product(f, g, PoissonStructure.constant(matrix), moyal_weights(3), 3) == \
            moyal_product(f, g, matrix, 3)


def _all_posets(n):
    """Every poset on ``0..n-1`` whose order extends the integer order.

    Each finite poset has a linear extension, so every isomorphism class
    appears at least once.
    """
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for mask in range(1 << len(pairs)):
        rel = {p for b, p in enumerate(pairs) if mask >> b & 1}
        if all((i, k) in rel for (i, j) in rel for (jj, k) in rel if j == jj):
            yield FinitePoset.from_relations(list(range(n)), sorted(rel))


def _hall_mobius(p, i, k):
    """Signed chain count: ``mu(i, k) = sum over chains C of the open interval of (-1)^(|C| + 1)``."""
    if i == k:
        return 1
    inner = [j for j in p.elements if j not in (i, k) and p.le(i, j) and p.le(j, k)]
    total = -1
    for r in range(1, len(inner) + 1):
        for c in combinations(inner, r):
            if all(p.le(a, b) or p.le(b, a) for a, b in combinations(c, 2)):
                total += (-1) ** (r + 1)
    return total


@criterion(12)
def test_criterion_12_mobius_and_groupoids():
    seen = 0
    for n in range(6):
        for p in _all_posets(n):
            seen += 1
            mu = mobius(p)
            for i in p.elements:
                for k in p.elements:
                    if not p.le(i, k):
                        assert mu[(i, k)] == 0
                        continue
                    interval = [j for j in p.elements if p.le(i, j) and p.le(j, k)]
                    delta = 1 if i == k else 0
                    assert sum(mu[(i, j)] for j in interval) == delta
                    assert sum(mu[(j, k)] for j in interval) == delta
                    assert mu[(i, k)] == _hall_mobius(p, i, k)
    # naturally labelled posets on 0..5 points: 1, 1, 2, 7, 40, 357
    assert seen == 1 + 1 + 2 + 7 + 40 + 357

    assert groupoid_cardinality(FiniteGroupoidData(("a", "b"), (1, 1))) == 2
    assert groupoid_cardinality(FiniteGroupoidData(("a",), (2,))) == Fraction(1, 2)
    assert groupoid_cardinality(FiniteGroupoidData(("a", "b", "c"), (1, 2, 3))) == Fraction(11, 6)
    sets = FiniteGroupoidData(tuple(range(7)), tuple(factorial(k) for k in range(7)))
    assert groupoid_cardinality(sets) == sum(Fraction(1, factorial(k)) for k in range(7))


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    return main(list(argv), stdout=out, stderr=err), out.getvalue()


@criterion(13)
def test_criterion_13_cli():
    assert _cli("weyl", "--dim", "1", "--trunc", "12", "--expr", "Y^4 * X^3") == \
        (0, "x^3 y^4 + 12 x^2 y^3 h + 36 x y^2 h^2 + 24 y h^3\n")
    assert _cli("moments", "--dim", "1", "--cov", "[[1]]", "--word", "1111") == (0, "3\n")
    assert _cli("feynman", "--dim", "1", "--cov", "[[1]]", "--interaction", "x^3", "--order", "2",
                "--oracle") == (0, "5/24 g3^2\t5/24 g3^2\n")

    from qspecies.expr import Context, evaluate_text
    from qspecies.feynman import CouplingSeries
    cases = [
        (["series", "--dim", "2", "--trunc", "4", "--expr", "inv(1 - x1 - x2/2)"], CommSeries,
         Context("comm", 2, 4)),
        (["series", "--mode", "nc", "--dim", "2", "--trunc", "4", "--expr", "inv(1 - x1 - x1*x2)"], NCSeries,
         Context("nc", 2, 4)),
        (["series", "--mode", "super", "--odd", "2", "--trunc", "4", "--expr", "inv(1 - x*t1 - t1*t2)"],
         SuperSeries, Context("super", 1, 4, 2)),
        (["weyl", "--trunc", "8", "--expr", "Y^3 * X^2"], WeylElement, Context("weyl", 1, 8)),
    ]
    for argv, cls, ctx in cases:
        code, out = _cli(*argv, "--json")
        assert code == 0
        value = cls.from_json(out)
        assert value == evaluate_text(argv[argv.index("--expr") + 1], ctx)
        assert json.dumps(value.to_json(), sort_keys=True) == out.strip()
    code, out = _cli("feynman", "--dim", "1", "--cov", "[[1]]", "--interaction", "x^3", "--order", "2", "--json")
    assert code == 0
    assert json.dumps(CouplingSeries.from_json(out).to_json(), sort_keys=True) == out.strip()


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except Exception:
                failed += 1
    sys.exit(1 if failed else 0)
