from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from qspecies.comm_series import CommSeries
from qspecies.core import multi_indices, words_upto
from qspecies.nc_series import NCSeries

settings.register_profile(
    "default", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_rationals = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


@st.composite
def comm_series(draw, dim, trunc, constant=None, min_degree=0):
    """A dense random series; ``constant`` pins the constant term."""
    coeffs = {}
    for a in multi_indices(dim, trunc):
        if sum(a) < min_degree:
            continue
        coeffs[a] = draw(small_rationals)
    if constant is not None:
        coeffs[(0,) * dim] = constant
    return CommSeries(dim, trunc, coeffs)


@st.composite
def nc_series(draw, dim, trunc, constant=None, min_degree=0):
    coeffs = {}
    for w in words_upto(dim, trunc):
        if len(w) < min_degree:
            continue
        coeffs[w] = draw(small_rationals)
    if constant is not None:
        coeffs[()] = constant
    return NCSeries(dim, trunc, coeffs)


# acceptance results, printed at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, title = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}")


@st.composite
def super_series(draw, dim, odd, trunc, constant=None):
    from itertools import combinations

    from qspecies.super_series import SuperSeries
    thetas = [c for k in range(odd + 1) for c in combinations(range(1, odd + 1), k)]
    coeffs = {}
    for a in multi_indices(dim, trunc):
        for t in thetas:
            # keep the examples sparse so products stay cheap
            if draw(st.booleans()):
                coeffs[(a, t)] = draw(small_rationals)
    if constant is not None:
        coeffs[((0,) * dim, ())] = constant
    return SuperSeries(dim, odd, trunc, coeffs)


@st.composite
def weyl_elements(draw, dim, trunc):
    from qspecies.weyl import WeylElement
    coeffs = {}
    for ab in multi_indices(2 * dim, trunc):
        for c in range((trunc - sum(ab)) // 2 + 1):
            if draw(st.booleans()):
                coeffs[(ab[:dim], ab[dim:], c)] = draw(small_rationals)
    return WeylElement(dim, trunc, coeffs)


@st.composite
def comm_species(draw, dim, size, empty=True):
    """A random commutative species with counts on contents of size <= ``size``."""
    from qspecies.species import CommSpecies
    table = {a: draw(st.integers(0, 3)) for a in multi_indices(dim, size) if empty or any(a)}
    return CommSpecies.from_table(dim, table)


@st.composite
def nc_species(draw, dim, size, empty=True):
    from qspecies.species import NCSpecies
    table = {w: draw(st.integers(0, 3)) for w in words_upto(dim, size) if empty or w}
    return NCSpecies.from_table(dim, table)
