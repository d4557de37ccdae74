"""Exact correlation engine: examples, the closed-form law, moments."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import fraclab
from fraclab import exact
from fraclab.acceptance import correlation_quadrature


THIRD = Fraction(1, 3)


def test_basic_examples():
    assert fraclab.exact_correlation(1, 1) == THIRD
    assert fraclab.exact_correlation(1, 2) == Fraction(7, 24)
    assert fraclab.exact_correlation(2, 6) == Fraction(5, 18)
    assert fraclab.exact_correlation(5, 6) == Fraction(91, 360)


@pytest.mark.parametrize("n", [1, 2, 3, 17, 100, 640])
def test_diagonal_is_one_third(n):
    assert fraclab.exact_correlation(n, n) == THIRD


def test_expected_correlation_examples():
    assert fraclab.expected_correlation(1, 2, 1).value == Fraction(7, 24)
    assert fraclab.expected_correlation(1, 2, 100).value == Fraction(7, 24)
    assert fraclab.expected_correlation(6, 6, 100).value == THIRD


def test_expected_correlation_x_independent():
    values = {fraclab.expected_correlation(3, 8, X).value for X in (1, 2, 3, 10, 100)}
    assert len(values) == 1


def test_expected_correlation_rejects_bad_x():
    with pytest.raises(ValueError):
        fraclab.expected_correlation(1, 2, 0)
    with pytest.raises(ValueError):
        fraclab.expected_correlation(1, 2, 2.5)


def test_domain_and_size_guards():
    with pytest.raises(ValueError):
        fraclab.exact_correlation(0, 3)
    with pytest.raises(ValueError):
        fraclab.exact_correlation(3, 0)
    with pytest.raises(ValueError):
        fraclab.exact_correlation(600_000, 500_000)


def test_law_on_random_pairs_with_quadrature_oracle():
    rng = random.Random(2024)
    for _ in range(5):
        n = rng.randint(1, 200)
        m = rng.randint(1, 200)
        law = fraclab.correlation_closed_form(n, m)
        assert fraclab.exact_correlation(n, m) == law
        assert abs(correlation_quadrature(n, m) - float(law)) < 1e-9


@given(n=st.integers(1, 60), m=st.integers(1, 60))
@settings(max_examples=40, deadline=None)
def test_symmetry(n, m):
    assert fraclab.exact_correlation(n, m) == fraclab.exact_correlation(m, n)


@given(n=st.integers(1, 40), m=st.integers(1, 40), c=st.integers(1, 8))
@settings(max_examples=40, deadline=None)
def test_scale_invariance(n, m, c):
    assert fraclab.exact_correlation(c * n, c * m) == fraclab.exact_correlation(n, m)


@given(n=st.integers(1, 80), m=st.integers(1, 80))
@settings(max_examples=40, deadline=None)
def test_bounds(n, m):
    value = fraclab.exact_correlation(n, m)
    assert Fraction(1, 4) < value <= THIRD
    assert (value == THIRD) == (n == m)


def test_python_and_numpy_sweeps_agree():
    rng = random.Random(5)
    for _ in range(25):
        n = rng.randint(1, 50)
        m = rng.randint(1, 50)
        g = math.gcd(n, m)
        L = n // g * m
        p, q = L // n, L // m
        assert exact._sweep_total_python(L, p, q) == exact._sweep_total_numpy(L, p, q)


def test_large_pair_uses_bigint_path():
    # lcm(999, 1000) = 999000 exceeds the vectorized range
    assert fraclab.exact_correlation(999, 1000) == fraclab.correlation_closed_form(999, 1000)


def test_floor_second_moment_examples():
    assert fraclab.floor_second_moment(1, 1) == 0
    assert fraclab.floor_second_moment(2, 1) == Fraction(1, 2)
    assert fraclab.floor_second_moment(3, 2) == Fraction(55, 6)


def test_floor_second_moment_against_literal_sum():
    for n, X in [(1, 1), (2, 1), (3, 2), (7, 3), (4, 25)]:
        nX = n * X
        brute = Fraction(sum(k * k for k in range(nX)), nX)
        assert fraclab.floor_second_moment(n, X) == brute


def test_cross_moment_examples():
    assert fraclab.cross_moment(1, 1) == 0
    assert fraclab.cross_moment(2, 1) == Fraction(3, 4)
    assert fraclab.cross_moment(1, 2) == Fraction(3, 4)


def test_cross_moment_against_literal_sum():
    for n, X in [(1, 1), (2, 1), (1, 2), (5, 4), (3, 11)]:
        nX = n * X
        brute = Fraction(sum(k * (2 * k + 1) for k in range(nX)), 2 * nX)
        assert fraclab.cross_moment(n, X) == brute


@given(n=st.integers(1, 50), X=st.integers(1, 20))
@settings(max_examples=40, deadline=None)
def test_moment_chain_collapses_to_one_third(n, X):
    assert fraclab.mean_square_fractional(n, X) == THIRD


def test_correlation_value_rejects_out_of_range():
    with pytest.raises(ValueError):
        exact.CorrelationValue(n=1, m=2, X=1, value=Fraction(1, 5), method="piecewise")


def test_profile_structure_against_six():
    values = {n: fraclab.exact_correlation(n, 6) for n in range(1, 13)}
    others = [values[n] for n in values if n != 6]
    assert all(values[6] > v for v in others)            # global strict peak
    for n in (5, 7, 11):
        assert values[12] > values[n]                    # end peak above coprime dips
    assert sorted(values, key=values.get)[:3] == [11, 7, 5]
    # exact ties and orderings the profile actually has
    assert values[3] == values[12] == Fraction(7, 24)
    assert values[4] < values[2]                         # no repeated-factor uplift
