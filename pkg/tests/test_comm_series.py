import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import comm_series
from qspecies.comm_series import (CommSeries, comp_inverse, compose, counts_to_series, derivative, egf_counts,
                                  mul_inverse, polybinomial_rhs, polybinomial_values)
from qspecies.core import InvalidArgument, multi_indices

X = CommSeries.var(1, 10, 1)


def test_constructors_and_access():
    f = CommSeries(2, 3, {(1, 0): 2, (0, 4): 7, (1, 1): 0})
    assert f[(1, 0)] == 2
    assert f[(0, 4)] == 0
    assert dict(f.items()) == {(1, 0): 2}
    assert f.degree() == 1
    assert CommSeries.zero(2, 3).is_zero()
    with pytest.raises(InvalidArgument):
        CommSeries(2, 3, {(1,): 1})


def test_coefficients_are_read_only():
    f = CommSeries.var(1, 3, 1)
    with pytest.raises(TypeError):
        f.coeffs[(2,)] = 1


def test_geometric_series():
    g = mul_inverse(1 - X)
    assert all(g[(n,)] == 1 for n in range(11))


def test_fibonacci():
    g = mul_inverse(1 - X - X ** 2)
    fib = [1, 1]
    while len(fib) < 11:
        fib.append(fib[-1] + fib[-2])
    assert [g[(n,)] for n in range(11)] == fib


def test_exp_linear_is_exp():
    e = CommSeries.exp_linear(1, 6)
    assert [e[(n,)] for n in range(7)] == [Fraction(1, f) for f in (1, 1, 2, 6, 24, 120, 720)]
    assert derivative(e, 1) == e


def test_catalan_inverse():
    t = comp_inverse([X - X ** 2])[0]
    assert [t[(n,)] for n in range(1, 6)] == [1, 1, 2, 5, 14]


def test_comp_inverse_two_variables():
    x1, x2 = CommSeries.var(2, 5, 1), CommSeries.var(2, 5, 2)
    s = (x1 - x1 * x2, x2 - x1 ** 2)
    t = comp_inverse(s)
    assert tuple(compose(si, t) for si in s) == (x1, x2)


def test_comp_inverse_rejects_bad_linear_part():
    with pytest.raises(InvalidArgument):
        comp_inverse([2 * X])
    with pytest.raises(InvalidArgument):
        comp_inverse([1 + X])


def test_mul_inverse_needs_unit_constant():
    with pytest.raises(InvalidArgument):
        mul_inverse(X)


def test_compose_rejects_constant_term():
    with pytest.raises(InvalidArgument):
        compose(X, 1 + X)


def test_derivative_lowers_trunc():
    d = derivative(X ** 3, 1)
    assert d.trunc == 9
    assert d == 3 * X ** 2
    with pytest.raises(InvalidArgument):
        derivative(CommSeries.one(1, 0), 1)


def test_equality_uses_smaller_trunc():
    a = CommSeries(1, 2, {(0,): 1, (1,): 1})
    b = CommSeries(1, 5, {(0,): 1, (1,): 1, (4,): 9})
    assert a == b
    assert a != CommSeries(1, 5, {(0,): 1})


def test_format():
    f = CommSeries(2, 4, {(0, 0): 1, (1, 0): Fraction(-1, 2), (1, 2): 3, (0, 1): 1})
    assert str(f) == "3 x1 x2^2 - 1/2 x1 + x2 + 1"
    assert str(CommSeries.zero(1, 3)) == "0"
    assert str(-X ** 2) == "-x^2"


def test_egf_round_trip():
    f = CommSeries(2, 4, {(2, 1): Fraction(1, 2), (0, 3): 5})
    counts = egf_counts(f)
    assert counts[(2, 1)] == 1
    assert counts[(0, 3)] == 30
    assert counts_to_series(counts, 2, 4) == f


@given(comm_series(2, 3), comm_series(2, 3), comm_series(2, 3))
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    assert f - f == 0
    assert f * 1 == f


@given(comm_series(2, 4, constant=Fraction(1)))
def test_mul_inverse_property(f):
    assert f * mul_inverse(f) == 1


@given(comm_series(2, 4), comm_series(2, 4))
def test_derivative_is_a_derivation(f, g):
    for i in (1, 2):
        assert derivative(f * g, i) == derivative(f, i) * g + f * derivative(g, i)


@given(comm_series(1, 4), comm_series(1, 4, min_degree=1), comm_series(1, 4, min_degree=1))
def test_compose_is_associative(f, g, h):
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


@given(comm_series(2, 3), comm_series(2, 3), comm_series(2, 3, min_degree=1), comm_series(2, 3, min_degree=1))
def test_compose_is_a_ring_map(f, g, u, v):
    assert compose(f * g, u, v) == compose(f, u, v) * compose(g, u, v)
    assert compose(f + g, u, v) == compose(f, u, v) + compose(g, u, v)


@given(comm_series(2, 4, min_degree=2), comm_series(2, 4, min_degree=2))
def test_comp_inverse_round_trip(f1, f2):
    x1, x2 = CommSeries.var(2, 4, 1), CommSeries.var(2, 4, 2)
    s = (x1 - f1, x2 - f2)
    t = comp_inverse(s)
    assert (compose(s[0], t), compose(s[1], t)) == (x1, x2)
    assert (compose(t[0], s), compose(t[1], s)) == (x1, x2)


@given(comm_series(2, 4), st.integers(0, 3), st.integers(0, 2))
def test_polybinomial_identity(s, a, b):
    lhs = polybinomial_values(s, a + b)
    va, vb = polybinomial_values(s, a), polybinomial_values(s, b)
    for n in multi_indices(2, 4):
        assert lhs.get(n, 0) == polybinomial_rhs(va, vb, n)


@given(comm_series(2, 3))
def test_json_round_trip(f):
    text = json.dumps(f.to_json())
    g = CommSeries.from_json(text)
    assert g == f and g.trunc == f.trunc
