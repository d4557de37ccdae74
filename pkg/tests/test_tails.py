"""Step-function tail integrals and the finite Abel-summation identities."""

import math
import random
from fractions import Fraction

import pytest

import fraclab
from fraclab import tails


def test_u2_single_steps(table4):
    assert fraclab.tail_integral_u2(table4, 1, 2) == pytest.approx(0.5, abs=1e-15)
    assert fraclab.tail_integral_u2(table4, 2, 3) == 0.0  # M(2) = 0


def test_u1_single_steps(table4):
    assert fraclab.tail_integral_u1(table4, 1, 2) == pytest.approx(math.log(2), abs=1e-15)
    assert fraclab.tail_integral_u1(table4, 2, 4) == pytest.approx(
        -math.log(4 / 3), abs=1e-15
    )


def test_range_validation(table4):
    for fn in (fraclab.tail_integral_u2, fraclab.tail_integral_u1):
        with pytest.raises(ValueError):
            fn(table4, 5, 5)
        with pytest.raises(ValueError):
            fn(table4, 10, 5)
        with pytest.raises(ValueError):
            fn(table4, 1, table4.limit + 1)


def test_additivity(table6):
    for fn in (fraclab.tail_integral_u2, fraclab.tail_integral_u1):
        whole = fn(table6, 1, 10**6)
        for mid in (7, 10**3, 999_999):
            split = fn(table6, 1, mid) + fn(table6, mid, 10**6)
            assert abs(split - whole) < 1e-12


def test_u1_grid_magnitudes(table6):
    # finite truncations of the u1 tail fluctuate at O(10) scale here;
    # only boundedness is asserted, the convergence claim is asymptotic
    for N in (10**2, 10**3, 10**4):
        assert abs(fraclab.tail_integral_u1(table6, N, 10**6)) < 50


def test_abel_single_step(table4):
    assert fraclab.abel_identity_check(table4, 1, 2, Fraction(1, 2)) < 1e-9


def test_abel_example(table4):
    assert fraclab.abel_identity_check(table4, 10, 100, Fraction(1, 3)) < 1e-9


def test_abel_random_suite(table4):
    rng = random.Random(31337)
    for _ in range(30):
        N = rng.randint(1, 9000)
        U = rng.randint(N + 1, 10**4)
        q = rng.randint(1, 50)
        p = rng.randint(1, 2 * q)
        assert fraclab.abel_identity_check(table4, N, U, Fraction(p, q)) < 1e-9


def test_abel_tie_break_at_coincident_jumps(table4):
    # x = 1/2 puts a sawtooth jump on every even u, exactly where M steps;
    # the identity only closes if those jumps read M at the left limit
    for N, U in [(1, 2), (2, 4), (10, 50), (99, 200)]:
        assert fraclab.abel_identity_check(table4, N, U, Fraction(1, 2)) < 1e-9
    assert tails._mertens_left(table4, 4, 2) == int(table4.mertens[1])  # u = 2
    assert tails._mertens_left(table4, 5, 2) == int(table4.mertens[2])  # u = 5/2


def test_abel_rejects_bad_x(table4):
    with pytest.raises(ValueError):
        fraclab.abel_identity_check(table4, 1, 10, Fraction(0))
    with pytest.raises(ValueError):
        fraclab.abel_identity_check(table4, 1, 10, Fraction(-1, 3))
    with pytest.raises(ValueError):
        fraclab.abel_identity_check(table4, 1, 10, Fraction(1, 1001))
    with pytest.raises(ValueError):
        # floats carry huge power-of-two denominators; they must not
        # sneak through as "rational" x
        fraclab.abel_identity_check(table4, 1, 10, 0.3)


def test_abel_x_above_one_is_fine(table4):
    assert fraclab.abel_identity_check(table4, 5, 400, Fraction(7, 5)) < 1e-9


def test_floor_sum_identity(table4):
    assert fraclab.floor_sum_identity_check(table4, 10, 50, Fraction(1, 2)) < 1e-9
    assert fraclab.floor_sum_identity_check(table4, 3, 97, Fraction(5, 7)) < 1e-9


def test_classical_bound_report(table6):
    cutoffs = [10**3, 10**4, 10**5, 10**6]
    report = fraclab.classical_bound_report(table6, cutoffs)
    assert report.cutoffs == cutoffs
    assert report.mertens_ratio == [
        2e-3, -23e-4, -48e-5, 212e-6,
    ]
    assert all(f > 0 for f in report.bound_fit)
    assert report.tail_u2[-1] == 0.0 and report.tail_u1[-1] == 0.0
    # |M(N)|/N at desk scale
    assert abs(report.mertens_ratio[0]) <= 1e-2
    assert abs(report.mertens_ratio[-1]) < 1e-3
    # the true ratios are not monotone: 0.002 rises to 0.0023
    assert fraclab.mertens_ratio_strictly_decreasing(report) is False


def test_report_validation(table4):
    with pytest.raises(ValueError):
        fraclab.classical_bound_report(table4, [100, 100])
    with pytest.raises(ValueError):
        fraclab.classical_bound_report(table4, [100, 200], c=0.0)
    with pytest.raises(IndexError):
        fraclab.classical_bound_report(table4, [table4.limit + 1])
