import json
from fractions import Fraction
from math import factorial, prod

import pytest

from qspecies.comm_series import CommSeries
from qspecies.core import InvalidArgument, double_factorial, enumerate_matchings
from qspecies.feynman import (CouplingSeries, CovarianceModel, FlagGraph, degree_multisets, enumerate_graphs,
                              feynman_expand, flag_automorphisms, gaussian_moment, moment_by_content, pert_map,
                              wick_oracle)

COV1 = CovarianceModel.identity(1)
COV2 = CovarianceModel(2, ((Fraction(2), Fraction(1, 2)), (Fraction(1, 2), Fraction(1))))


def series(dim, terms, trunc=8):
    return CommSeries(dim, trunc, terms)


@pytest.mark.parametrize("n", range(9))
def test_moments_of_even_powers(n):
    assert gaussian_moment((1,) * (2 * n), COV1) == double_factorial(2 * n - 1)


def test_moment_examples():
    assert gaussian_moment((1, 1, 1, 1), COV1) == 3
    assert gaussian_moment((1, 1, 1), COV1) == 0
    assert gaussian_moment((1, 2), COV2) == Fraction(1, 2)
    assert gaussian_moment((1, 1, 2, 2), COV2) == 2 * 1 + 2 * Fraction(1, 4)


def _matching_sum(word, cov):
    total = Fraction(0)
    for m in enumerate_matchings(range(len(word))):
        total += prod((cov.entry(word[p], word[q]) for p, q in m), start=Fraction(1))
    return total


@pytest.mark.parametrize("word", [(1, 1, 2, 2), (1, 2, 2, 2), (1, 1, 1, 1, 2, 2), (2,) * 6, (1, 2) * 3,
                                  (2, 1, 1, 2, 2, 1, 1, 2), (1, 2, 1, 2, 1, 2, 2, 2, 1, 1), (1, 2, 1)])
def test_moment_matches_matching_sum(word):
    assert gaussian_moment(word, COV2) == _matching_sum(word, COV2)
    assert moment_by_content((word.count(1), word.count(2)), COV2) == _matching_sum(word, COV2)


def test_covariance_must_be_symmetric():
    with pytest.raises(InvalidArgument):
        CovarianceModel(2, ((1, 2), (3, 1)))


def test_pert_map():
    p = pert_map(series(2, {(1, 2): 1, (3, 0): 6}))
    assert p[((1, 2), ((3, 1),))] == Fraction(1, 6)
    assert p[((3, 0), ((3, 1),))] == 1
    assert str(pert_map(series(1, {(3,): 1}))) == "1/6 x^3 g3"


def test_theta_and_dumbbell():
    graphs = enumerate_graphs(0, [3, 3])
    assert sorted(aut for _, aut in graphs) == [8, 12]
    for g, aut in graphs:
        assert flag_automorphisms(g) == aut


def test_single_propagator_and_double_loop():
    [(g, aut)] = enumerate_graphs(2, [])
    assert aut == 1 and g.edges == ((0, 1),)
    [(g, aut)] = enumerate_graphs(0, [4])
    assert aut == 8


@pytest.mark.parametrize("legs,degrees", [
    (0, (3, 3)), (0, (4,)), (0, (4, 4)), (0, (3, 3, 3, 3)), (2, (3, 3)), (1, (3,)), (2, (4,)),
    (4, (4,)), (3, (3, 4)), (0, (3, 3, 4)), (4, (3, 3)), (2, (3, 3, 4)),
])
def test_symmetry_factor_sum(legs, degrees):
    # orbit counting: matchings of labelled flags over the relabelling group
    graphs = enumerate_graphs(legs, degrees)
    flags = legs + sum(degrees)
    matchings = double_factorial(flags - 1) if flags % 2 == 0 else 0
    group = prod(factorial(d) for d in degrees) * prod(factorial(degrees.count(d)) for d in set(degrees))
    assert sum(Fraction(1, aut) for _, aut in graphs) == Fraction(matchings, group)
    for g, aut in graphs:
        assert flag_automorphisms(g) == aut
        assert g.degrees() == sorted(degrees)


def test_graph_order_is_deterministic():
    a = [g.to_json(aut) for g, aut in enumerate_graphs(2, [3, 3, 4])]
    b = [g.to_json(aut) for g, aut in enumerate_graphs(2, [4, 3, 3])]
    assert a == b


def test_flag_graph_validation():
    with pytest.raises(InvalidArgument):
        FlagGraph(3, ((0, 1),), ())
    with pytest.raises(InvalidArgument):
        FlagGraph(2, ((0, 1),), ((0, 1),), legs=1)


def test_named_vacuum_values():
    phi3 = series(1, {(3,): 1})
    phi4 = series(1, {(4,): 1})
    assert str(feynman_expand(phi3, COV1, (), 2).homogeneous(2)) == "5/24 g3^2"
    assert str(feynman_expand(phi4, COV1, (), 1).homogeneous(1)) == "1/8 g4"


def test_bare_propagator():
    assert feynman_expand(series(2, {(3, 0): 1}), COV2, (1, 1), 0).homogeneous(0) == \
        CouplingSeries(2, {((0, 0), ()): 2}, order=0)


def test_rejects_quadratic_terms():
    with pytest.raises(InvalidArgument):
        feynman_expand(series(1, {(2,): 1}), COV1, (), 1)


INTERACTIONS_1 = [{(3,): 1}, {(4,): 1}, {(3,): Fraction(1, 2), (4,): -2}]
INTERACTIONS_2 = [{(3, 0): 1, (1, 2): 2}, {(2, 2): 1, (0, 4): Fraction(1, 3)},
                  {(3, 0): 1, (0, 3): -1, (1, 3): 2, (4, 0): 1}]


@pytest.mark.parametrize("terms", INTERACTIONS_1)
@pytest.mark.parametrize("legs", [(), (1,), (1, 1), (1, 1, 1), (1, 1, 1, 1)])
def test_expansion_matches_oracle_one_variable(terms, legs):
    s = series(1, terms)
    for order in range(4):
        assert feynman_expand(s, COV1, legs, order) == wick_oracle(s, COV1, legs, order)


@pytest.mark.parametrize("terms", INTERACTIONS_2)
@pytest.mark.parametrize("legs", [(), (1,), (1, 2), (2, 2), (1, 1, 2), (1, 1, 2, 2)])
def test_expansion_matches_oracle_two_variables(terms, legs):
    s = series(2, terms)
    for order in range(3):
        assert feynman_expand(s, COV2, legs, order) == wick_oracle(s, COV2, legs, order)


def test_coupling_series_json_round_trip():
    s = series(2, {(3, 0): 1, (0, 4): 2})
    c = feynman_expand(s, COV2, (1, 2), 2)
    assert CouplingSeries.from_json(json.dumps(c.to_json())) == c


def test_degree_multisets():
    assert degree_multisets([3, 4], 2) == [(3, 3), (3, 4), (4, 4)]
    assert degree_multisets([3], 0) == [()]


@pytest.mark.parametrize("legs", [(), (1, 2)])
def test_expansion_matches_oracle_order_three(legs):
    s = series(2, INTERACTIONS_2[0])
    assert feynman_expand(s, COV2, legs, 3) == wick_oracle(s, COV2, legs, 3)
