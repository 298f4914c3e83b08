import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qspecies import _kernels_py, kernels

compiled = pytest.importorskip("qspecies._kernels")

exponents = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 3))
coeffs = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 4))
poly = st.dictionaries(exponents, coeffs, max_size=20)
words = st.lists(st.integers(1, 3), max_size=5).map(tuple)
word_poly = st.dictionaries(words, coeffs, max_size=20)


def test_backend_selection():
    expected = "python" if os.environ.get("QSPECIES_PURE_PYTHON") else "cython"
    assert kernels.BACKEND == expected


@given(poly, poly, st.integers(0, 10))
def test_graded_mul_parity(a, b, trunc):
    assert compiled.graded_mul(a, b, trunc) == _kernels_py.graded_mul(a, b, trunc)


def test_graded_mul_parity_sparse_high_degree():
    # exponents large enough to leave the dense kernel path
    a = {(40, 0, 0, 0, 0): Fraction(1, 3), (0, 0, 0, 0, 35): 2, (1, 2, 3, 4, 5): -1}
    b = {(0, 40, 0, 0, 0): 5, (1, 1, 1, 1, 1): Fraction(-2, 7)}
    assert compiled.graded_mul(a, b, 90) == _kernels_py.graded_mul(a, b, 90)


@given(word_poly, word_poly, st.integers(0, 8))
def test_word_mul_parity(a, b, trunc):
    assert compiled.word_mul(a, b, trunc) == _kernels_py.word_mul(a, b, trunc)


@pytest.mark.parametrize("n", range(11))
def test_matchings_parity(n):
    assert compiled.perfect_matchings(n) == _kernels_py.perfect_matchings(n)


@pytest.mark.parametrize("n", range(8))
def test_partitions_parity(n):
    assert compiled.set_partitions(n) == _kernels_py.set_partitions(n)


@given(st.lists(st.integers(0, 20), unique=True), st.lists(st.integers(0, 20), unique=True))
def test_inversions_parity(first, second):
    assert compiled.inversions(tuple(first), tuple(second)) == _kernels_py.inversions(first, second)


def test_environment_forces_pure_python():
    env = dict(os.environ, QSPECIES_PURE_PYTHON="1")
    code = "from qspecies import BACKEND; from qspecies.comm_series import *; " \
           "x = CommSeries.var(1, 5, 1); print(BACKEND, mul_inverse(1 - x - x*x))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout == "python 8 x^5 + 5 x^4 + 3 x^3 + 2 x^2 + x + 1\n"
