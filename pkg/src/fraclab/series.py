"""Partial-sum engines for the Moebius-weighted sawtooth series.

Three families live here, all over a shared MoebiusTable:

* the sawtooth Fourier partial sum  1/2 - (1/pi) sum_{k<=K} sin(2 pi k x)/k,
  which converges to {x} off the integers;
* the sine series  -pi sum_{n<=N} mu(n)/n {nx}  -> sin(2 pi x), with its
  residual eps_N(x) and the squared-equation residual
  eps~_N(x) = 2 sin(2 pi x) eps_N(x) + eps_N(x)^2;
* the off-diagonal correlation double sum

      S(N) = sum_{n != m <= N} mu(n) mu(m) / (nm) * C(n, m),

  whose partial sums approach DOUBLE_SUM_LIMIT = -9 / (2 pi^2).

S(N) has two routes.  The direct route walks the O(N^2) square-free
pairs; in exact mode every C(n, m) comes from the piecewise integration
engine, so no closed form is involved anywhere on that path.  The fast
route rewrites gcd(n, m)^2 through the Jordan totient divisor identity
sum_{d | g} J2(d) = g^2:

    S(N) = P(N)^2 / 4 + (1/12) sum_{d<=N} J2(d) A_d(N)^2 - D(N) / 3,
    A_d(N) = sum_{n<=N, d|n} mu(n)/n^2,   P(N) = sum mu(n)/n,
    D(N) = sum mu(n)^2/n^2,

which costs O(N log N).  The fast route leans on the closed-form
correlation law, so its exact-mode agreement with the direct route is a
real consistency check, not bookkeeping.

Float paths accumulate in ascending index order through ``math.fsum``
(exactly rounded), so results are deterministic run to run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Union

import numpy as np

from .arithmetic import (
    MoebiusTable,
    jordan2,
    moebius_harmonic,
    squarefree_zeta2_partial,
)
from .exact import correlation_closed_form, exact_correlation

#: limiting value of the correlation double sum
DOUBLE_SUM_LIMIT = -9.0 / (2.0 * math.pi**2)

#: rational-mode guard for the direct O(N^2) double sum
DIRECT_EXACT_LIMIT = 300

#: guard for the O(N^2)-per-point squared-identity check
SQUARED_IDENTITY_LIMIT = 500

_TWO_PI = 2.0 * math.pi


@dataclass
class SeriesPoint:
    """One truncation of a series sweep.

    X is the expectation range the sweep is reported at; the underlying
    correlations are X-independent, so it is recorded for output
    fidelity only.  ``abs_error`` is always recomputed from the stored
    value and target, never cached.
    """

    N: int
    X: int
    value: Union[float, Fraction]
    target: float = DOUBLE_SUM_LIMIT

    @property
    def abs_error(self) -> float:
        return abs(float(self.value) - self.target)


def sawtooth_fourier_partial(K: int, x: float) -> float:
    """1/2 - (1/pi) sum_{k<=K} sin(2 pi k x) / k.

    Rejects integer x: there the series value 1/2 is not {x} = 0.
    """
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    if float(x) == math.floor(x):
        raise ValueError(f"x={x} is an integer; the series does not represent {{x}} there")
    k = np.arange(1, K + 1, dtype=np.float64)
    terms = np.sin(_TWO_PI * k * x) / k
    return 0.5 - math.fsum(terms.tolist()) / math.pi


def sine_series_partial(table: MoebiusTable, N: int, x: float) -> float:
    """-pi sum_{n<=N} mu(n)/n {nx}, the truncated sine series."""
    table._check_index(N)
    n = np.arange(1, N + 1, dtype=np.float64)
    frac = (n * x) % 1.0
    terms = table.mu[1 : N + 1].astype(np.float64) / n * frac
    return -math.pi * math.fsum(terms.tolist())


def sine_series_residual(table: MoebiusTable, N: int, x: float) -> float:
    """eps_N(x): truncated sine series minus its limit sin(2 pi x)."""
    return sine_series_partial(table, N, x) - math.sin(_TWO_PI * x)


def squared_residual(table: MoebiusTable, N: int, x: float) -> float:
    """eps~_N(x) = 2 sin(2 pi x) eps_N(x) + eps_N(x)^2."""
    eps = sine_series_residual(table, N, x)
    return 2.0 * math.sin(_TWO_PI * x) * eps + eps * eps


def _squarefree_upto(table: MoebiusTable, N: int) -> np.ndarray:
    return np.nonzero(table.squarefree[1 : N + 1])[0] + 1


def _direct_row_float(table: MoebiusTable, n: int, below: np.ndarray) -> float:
    # sum over square-free m < n of mu(m)/m * C(n, m), closed-form C
    if below.size == 0:
        return 0.0
    g = np.gcd(below, n).astype(np.float64)
    c = 0.25 + g * g / (12.0 * n * below.astype(np.float64))
    mum = table.mu[below].astype(np.float64)
    return float(np.sum(mum / below * c))


def correlation_double_sum(
    table: MoebiusTable, N: int, exact: bool = False, x_range: int = 100
) -> SeriesPoint:
    """S(N) by the direct pair loop over square-free indices.

    Exact mode fetches every C(n, m) from the piecewise integration
    engine and sums Fractions; it is capped at N <= DIRECT_EXACT_LIMIT
    because the reduced denominators grow like lcm(1..N)^2.  Float mode
    uses the closed-form law per pair (the per-pair piecewise sweep
    would cost O(N^3) total and adds nothing: exact mode already pits
    the two routes against each other term by term).
    """
    table._check_index(N)
    sf = _squarefree_upto(table, N)
    if exact:
        if N > DIRECT_EXACT_LIMIT:
            raise ValueError(
                f"exact direct sum capped at N={DIRECT_EXACT_LIMIT}, got {N}"
            )
        total = Fraction(0)
        for i, n in enumerate(sf):
            n = int(n)
            for m in sf[:i]:
                m = int(m)
                c = exact_correlation(n, m)
                total += Fraction(2 * int(table.mu[n]) * int(table.mu[m]), n * m) * c
        return SeriesPoint(N=N, X=x_range, value=total)
    contribs = []
    for i, n in enumerate(sf):
        n = int(n)
        row = _direct_row_float(table, n, sf[:i])
        contribs.append(2.0 * int(table.mu[n]) / n * row)
    return SeriesPoint(N=N, X=x_range, value=math.fsum(contribs))


def _divisors(n: int) -> List[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def correlation_double_sum_fast(
    table: MoebiusTable, N: int, exact: bool = False, x_range: int = 100
) -> SeriesPoint:
    """S(N) through the gcd-grouped O(N log N) rearrangement."""
    table._check_index(N)
    if table.jordan2 is None:
        raise RuntimeError("fast double sum needs jordan2; call build_jordan2 first")
    if exact:
        P = moebius_harmonic(table, N, exact=True)
        D = squarefree_zeta2_partial(table, N, exact=True)
        G = Fraction(0)
        for d in range(1, N + 1):
            a = Fraction(0)
            for n in range(d, N + 1, d):
                if table.mu[n]:
                    a += Fraction(int(table.mu[n]), n * n)
            if a:
                G += jordan2(table, d) * a * a
        value: Union[float, Fraction] = P * P / 4 + G / 12 - D / 3
    else:
        n = np.arange(1, N + 1, dtype=np.float64)
        mun = table.mu[1 : N + 1].astype(np.float64)
        P = math.fsum((mun / n).tolist())
        mon2 = mun / (n * n)
        j2 = table.jordan2
        gterms = []
        for d in range(1, N + 1):
            a = float(np.sum(mon2[d - 1 :: d]))
            gterms.append(float(j2[d]) * a * a)
        G = math.fsum(gterms)
        D = math.fsum((np.abs(mon2)).tolist())  # |mu|/n^2 == mu^2/n^2
        value = 0.25 * P * P + G / 12.0 - D / 3.0
    return SeriesPoint(N=N, X=x_range, value=value)


def correlation_double_sum_sweep(
    table: MoebiusTable,
    n_max: int,
    fast: bool = True,
    exact: bool = False,
    x_range: int = 100,
) -> List[SeriesPoint]:
    """S(N) for every N = 1..n_max, computed incrementally.

    Exact modes accumulate Fractions, so each sweep entry equals the
    corresponding single-N call identically.  The float fast sweep just
    evaluates per N (the direct evaluation is already cheap); the float
    direct sweep shares pair work across N and re-sums the prefix with
    fsum for each point.
    """
    table._check_index(n_max)
    points: List[SeriesPoint] = []
    if fast:
        if not exact:
            return [
                correlation_double_sum_fast(table, N, exact=False, x_range=x_range)
                for N in range(1, n_max + 1)
            ]
        if table.jordan2 is None:
            raise RuntimeError("fast double sum needs jordan2; call build_jordan2 first")
        P = Fraction(0)
        D = Fraction(0)
        G = Fraction(0)
        A: dict[int, Fraction] = {}
        for n in range(1, n_max + 1):
            mun = int(table.mu[n])
            if mun:
                P += Fraction(mun, n)
                D += Fraction(1, n * n)
                delta = Fraction(mun, n * n)
                for d in _divisors(n):
                    old = A.get(d, Fraction(0))
                    G += jordan2(table, d) * delta * (2 * old + delta)
                    A[d] = old + delta
            points.append(
                SeriesPoint(N=n, X=x_range, value=P * P / 4 + G / 12 - D / 3)
            )
        return points
    if exact and n_max > DIRECT_EXACT_LIMIT:
        raise ValueError(
            f"exact direct sweep capped at N={DIRECT_EXACT_LIMIT}, got {n_max}"
        )
    sf_flags = table.squarefree
    seen: List[int] = []
    if exact:
        total = Fraction(0)
        for n in range(1, n_max + 1):
            if sf_flags[n]:
                row = Fraction(0)
                for m in seen:
                    row += Fraction(int(table.mu[m]), m) * exact_correlation(n, m)
                total += Fraction(2 * int(table.mu[n]), n) * row
                seen.append(n)
            points.append(SeriesPoint(N=n, X=x_range, value=total))
        return points
    contribs: List[float] = []
    below = np.array([], dtype=np.int64)
    for n in range(1, n_max + 1):
        if sf_flags[n]:
            row = _direct_row_float(table, n, below)
            contribs.append(2.0 * int(table.mu[n]) / n * row)
            below = np.append(below, n)
        points.append(SeriesPoint(N=n, X=x_range, value=math.fsum(contribs)))
    return points


def sine_squared_identity_gap(table: MoebiusTable, N: int, x: float) -> float:
    """|sin^2(2 pi x) + eps~_N(x) - squared expansion| at truncation N.

    The expansion splits (sum_{n<=N} mu(n)/n {nx})^2 into its diagonal
    and off-diagonal double sums and every product is summed explicitly,
    so the returned gap measures floating-point noise only; the identity
    itself is exact at every truncation.
    """
    table._check_index(N)
    if N > SQUARED_IDENTITY_LIMIT:
        raise ValueError(
            f"squared identity check capped at N={SQUARED_IDENTITY_LIMIT}, got {N}"
        )
    n = np.arange(1, N + 1, dtype=np.float64)
    a = table.mu[1 : N + 1].astype(np.float64) / n * ((n * x) % 1.0)
    s1 = math.fsum(a.tolist())
    sin2 = math.sin(_TWO_PI * x)
    eps = -math.pi * s1 - sin2
    lhs = sin2 * sin2 + (2.0 * sin2 * eps + eps * eps)
    pi2 = math.pi * math.pi
    diagonal = pi2 * math.fsum((a * a).tolist())
    products = np.outer(a, a)
    np.fill_diagonal(products, 0.0)
    off_diagonal = pi2 * math.fsum(np.sum(products, axis=1).tolist())
    return abs(lhs - (diagonal + off_diagonal))


def trig_moments(X: int) -> tuple[float, float, float]:
    """(E_X(sin^2 2 pi x), E_X(2 pi sin 2 pi x), E_X(2 pi x sin 2 pi x)).

    Closed forms:

        1/2 - sin(4 pi X) / (8 pi X)
        (1 - cos(2 pi X)) / X
        sin(2 pi X) / (2 pi X) - cos(2 pi X)

    X is restricted to the positive integers, where the trig factors sit
    at whole periods; evaluating them on the reduced phase of X makes
    the results exactly (1/2, 0, -1) instead of within an ulp of them.
    """
    if isinstance(X, bool) or not isinstance(X, (int, np.integer)):
        raise ValueError(f"X must be a positive integer, got {X!r}")
    if X < 1:
        raise ValueError(f"X must be >= 1, got {X}")
    phase = _TWO_PI * (X % 1)  # identically 0 for integer X
    sin_2piX = math.sin(phase)
    cos_2piX = math.cos(phase)
    sin_4piX = math.sin(2.0 * phase)
    return (
        0.5 - sin_4piX / (8.0 * math.pi * X),
        (1.0 - cos_2piX) / X,
        sin_2piX / (_TWO_PI * X) - cos_2piX,
    )


def mobius_double_fourier(table: MoebiusTable, N: int, K: int, x: float) -> float:
    """sum_{n<=N} mu(n)/n sum_{k<=K} sin(2 pi n k x)/k.

    The fully expanded double series rearranges to sin(2 pi x) through
    the divisor-sum vanishing of mu; the rearrangement is only verified
    numerically, so this evaluator exists to watch the residual shrink
    as N and K grow.
    """
    table._check_index(N)
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    k = np.arange(1, K + 1, dtype=np.float64)
    rows = []
    for n in _squarefree_upto(table, N):
        n = int(n)
        inner = float(np.sum(np.sin(_TWO_PI * k * (n * x)) / k))
        rows.append(int(table.mu[n]) / n * inner)
    return math.fsum(rows)


@dataclass
class ResidualMomentReport:
    """Bookkeeping check: 1/2 + E_X(eps~_N) vs pi^2/3 sum mu^2/n^2 + pi^2 S(N).

    The equality is exact for integer X; the gap reported here is the
    Simpson sampling error of E_X(eps~_N), whose integrand has O(N)
    jump points per unit.  Report only, nothing asserts on the gap
    beyond a loose sanity bound.
    """

    N: int
    X: int
    panels_per_unit: int
    lhs: float
    rhs: float

    @property
    def gap(self) -> float:
        return abs(self.lhs - self.rhs)


def residual_moment_report(
    table: MoebiusTable, N: int, X: int = 1, panels_per_unit: int = 10**4
) -> ResidualMomentReport:
    """Estimate E_X(eps~_N) by composite Simpson and compare the books."""
    table._check_index(N)
    if X < 1:
        raise ValueError(f"X must be >= 1, got {X}")
    panels = panels_per_unit * X
    if panels % 2:
        panels += 1
    xs = np.linspace(0.0, float(X), panels + 1)
    acc = np.zeros_like(xs)
    for n in _squarefree_upto(table, N):
        n = int(n)
        acc += int(table.mu[n]) / n * ((n * xs) % 1.0)
    eps = -math.pi * acc - np.sin(_TWO_PI * xs)
    tilde = 2.0 * np.sin(_TWO_PI * xs) * eps + eps * eps
    weights = np.ones(panels + 1)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    h = float(X) / panels
    expectation = float(np.dot(weights, tilde)) * h / 3.0 / X
    lhs = 0.5 + expectation
    rhs = (
        math.pi**2 / 3.0 * float(squarefree_zeta2_partial(table, N))
        + math.pi**2 * float(correlation_double_sum(table, N, exact=False).value)
    )
    return ResidualMomentReport(
        N=N, X=X, panels_per_unit=panels_per_unit, lhs=lhs, rhs=rhs
    )
