"""Series partial sums: sine series, double sum routes, identities."""

import math
import random
from fractions import Fraction

import numpy as np
import pytest

import fraclab
from fraclab.series import DIRECT_EXACT_LIMIT, DOUBLE_SUM_LIMIT


def test_sawtooth_fourier_at_half():
    for K in (1, 7, 100):
        assert abs(fraclab.sawtooth_fourier_partial(K, 0.5) - 0.5) < 1e-12


def test_sawtooth_fourier_converges():
    assert abs(fraclab.sawtooth_fourier_partial(10**4, 0.25) - 0.25) < 1e-3
    assert abs(fraclab.sawtooth_fourier_partial(10**4, 0.75) - 0.75) < 1e-3


def test_sawtooth_fourier_rejects_integers():
    with pytest.raises(ValueError):
        fraclab.sawtooth_fourier_partial(10, 3.0)


def test_sine_series_at_zero(table4):
    assert fraclab.sine_series_partial(table4, 50, 0.0) == 0.0


def test_sine_series_single_term(table4):
    assert fraclab.sine_series_partial(table4, 1, 0.25) == pytest.approx(
        -math.pi / 4, abs=1e-15
    )


def test_sine_series_converges_slowly(table6):
    assert abs(fraclab.sine_series_partial(table6, 10**5, 0.25) - 1.0) < 1e-2


def test_residual_is_definitional(table4):
    rng = random.Random(17)
    for _ in range(100):
        N = rng.randint(1, 5000)
        x = rng.uniform(-2, 3)
        lhs = fraclab.sine_series_residual(table4, N, x) + math.sin(2 * math.pi * x)
        rhs = fraclab.sine_series_partial(table4, N, x)
        assert lhs == pytest.approx(rhs, abs=1e-13)


def test_squared_residual_identity(table4):
    rng = random.Random(18)
    for _ in range(50):
        N = rng.randint(1, 3000)
        x = rng.uniform(0, 1)
        eps = fraclab.sine_series_residual(table4, N, x)
        s = math.sin(2 * math.pi * x)
        expansion = (s + eps) ** 2 - s * s
        assert fraclab.squared_residual(table4, N, x) == pytest.approx(
            expansion, abs=1e-12
        )


def test_squared_residual_value(table4):
    # N=1, x=1/4: eps = -pi/4 - 1, so eps~ = 2*eps + eps^2
    eps = -math.pi / 4 - 1.0
    assert fraclab.squared_residual(table4, 1, 0.25) == pytest.approx(
        2 * eps + eps * eps, abs=1e-14
    )
    assert fraclab.squared_residual(table4, 7, 0.0) == 0.0


def test_double_sum_empty_and_first_pair(table4):
    assert fraclab.correlation_double_sum(table4, 1, exact=True).value == 0
    assert fraclab.correlation_double_sum(table4, 2, exact=True).value == Fraction(-7, 24)
    assert fraclab.correlation_double_sum_fast(table4, 2, exact=True).value == Fraction(-7, 24)


def test_double_sum_routes_agree_exactly(table4):
    direct = fraclab.correlation_double_sum_sweep(table4, 60, fast=False, exact=True)
    fast = fraclab.correlation_double_sum_sweep(table4, 60, fast=True, exact=True)
    assert [p.value for p in direct] == [p.value for p in fast]
    spot = fraclab.correlation_double_sum(table4, 60, exact=True).value
    assert spot == direct[-1].value
    assert fraclab.correlation_double_sum_fast(table4, 60, exact=True).value == spot


def test_exact_direct_guard(table4):
    with pytest.raises(ValueError):
        fraclab.correlation_double_sum(table4, DIRECT_EXACT_LIMIT + 1, exact=True)


def test_fast_requires_jordan():
    bare = fraclab.build_tables(50)
    if bare.jordan2 is not None:  # table memoization may have attached it already
        pytest.skip("memoized table already has jordan2")
    with pytest.raises(RuntimeError):
        fraclab.correlation_double_sum_fast(bare, 10)


def test_float_routes_agree_on_grid(table6):
    sweep = fraclab.correlation_double_sum_sweep(table6, 3000, fast=False, exact=False)
    for N in (100, 300, 1000, 3000):
        fast = fraclab.correlation_double_sum_fast(table6, N)
        assert abs(sweep[N - 1].value - fast.value) < 1e-12


def test_error_envelope_shrinks(table6):
    errs = [
        fraclab.correlation_double_sum_fast(table6, N).abs_error
        for N in (10, 100, 2000)
    ]
    assert errs[2] < errs[1] < errs[0]


def test_series_point_error_not_stale():
    pt = fraclab.SeriesPoint(N=5, X=100, value=0.0)
    before = pt.abs_error
    pt.value = DOUBLE_SUM_LIMIT
    assert before == abs(DOUBLE_SUM_LIMIT)
    assert pt.abs_error == 0.0


def test_squared_identity_gap(table6):
    assert fraclab.sine_squared_identity_gap(table6, 50, 0.0) == 0.0
    assert fraclab.sine_squared_identity_gap(table6, 50, 0.3) < 1e-10
    assert fraclab.sine_squared_identity_gap(table6, 500, 0.7) < 1e-10
    with pytest.raises(ValueError):
        fraclab.sine_squared_identity_gap(table6, 501, 0.3)


def test_trig_moments_exact_at_integers():
    assert fraclab.trig_moments(1) == (0.5, 0.0, -1.0)
    assert fraclab.trig_moments(100) == (0.5, 0.0, -1.0)
    with pytest.raises(ValueError):
        fraclab.trig_moments(0)
    with pytest.raises(ValueError):
        fraclab.trig_moments(2.0)


@pytest.mark.parametrize("X", [1, 2, 5])
def test_trig_moments_against_quadrature(X):
    panels = 200_000 * X
    xs = np.linspace(0.0, X, panels + 1)
    w = np.ones(panels + 1)
    w[1:-1:2], w[2:-1:2] = 4.0, 2.0
    h = X / panels

    def simpson(f):
        return float(np.dot(w, f)) * h / 3.0 / X

    s = np.sin(2 * np.pi * xs)
    got = fraclab.trig_moments(X)
    assert got[0] == pytest.approx(simpson(s * s), abs=1e-8)
    assert got[1] == pytest.approx(simpson(2 * np.pi * s), abs=1e-8)
    assert got[2] == pytest.approx(simpson(2 * np.pi * xs * s), abs=1e-8)


def test_double_fourier_rearrangement_residual_shrinks(table4):
    target = math.sin(2 * math.pi * 0.3)
    small = abs(fraclab.mobius_double_fourier(table4, 100, 100, 0.3) - target)
    large = abs(fraclab.mobius_double_fourier(table4, 1000, 1000, 0.3) - target)
    assert large < small


def test_residual_moment_bookkeeping(table4):
    report = fraclab.residual_moment_report(table4, 100)
    # equality is exact; the gap is pure Simpson sampling error
    assert report.gap < 0.05
    assert report.N == 100 and report.X == 1
