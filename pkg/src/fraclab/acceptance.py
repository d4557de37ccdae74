"""The built-in verification suite behind ``fraclab verify``.

Twelve numbered criteria, each pinned to a fixed tolerance and, where
randomness is involved, a fixed seed.  Exact statements are checked as
exact rational equalities; convergence statements carry tolerances that
were calibrated once against independent reference runs and are frozen
here.  A criterion either passes or fails; nothing is adaptive.

Criterion 7's second clause (strict decay of |M(N)|/N across the decade
cutoffs 10^3..10^6) is checked literally even though the true Mertens
values violate it: |M(10^3)|/10^3 = 0.002 rises to |M(10^4)|/10^4 =
0.0023.  It is expected to FAIL and is kept as an honest record of that
fact rather than silently loosened.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from . import arithmetic, exact, figures, series, tails
from .arithmetic import MoebiusTable

#: table size the full suite needs
REQUIRED_LIMIT = 10**6

_LAW_SEED = 20260810
_ABEL_SEED = 20260811


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float


def correlation_quadrature(n: int, m: int, target_error: float = 2e-10) -> float:
    """Composite-midpoint estimate of integral_0^1 {nx}{mx} dx.

    Independent of the exact engine: float breakpoints, float floors,
    plain averaging.  The integrand is quadratic between breakpoints
    with second derivative exactly 2nm, so the panel count needed for a
    requested error bound follows from the midpoint error formula.
    """
    bp = np.union1d(np.arange(n + 1) / n, np.arange(m + 1) / m)
    w = np.diff(bp)
    s3 = float(np.sum(w**3))
    panels = max(64, int(math.sqrt(n * m * s3 / (12.0 * target_error))) + 1)
    offsets = (np.arange(panels) + 0.5) / panels
    xs = bp[:-1][:, None] + w[:, None] * offsets[None, :]
    f = (n * xs - np.floor(n * xs)) * (m * xs - np.floor(m * xs))
    return float(np.sum(f.mean(axis=1) * w))


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------

def _c1_diagonal_exact(table: MoebiusTable) -> Tuple[bool, str]:
    third = Fraction(1, 3)
    checked = 0
    for n in range(1, 1001):
        for X in (1, 7, 100):
            cv = exact.expected_correlation(n, n, X)
            if cv.value != third:
                return False, f"E_{X}({{{n}x}}^2) = {cv.value} != 1/3"
            checked += 1
    return True, f"{checked} diagonal averages all exactly 1/3"


def _c2_closed_form_law(table: MoebiusTable) -> Tuple[bool, str]:
    rng = random.Random(_LAW_SEED)
    worst = 0.0
    for _ in range(20):
        n = rng.randint(1, 200)
        m = rng.randint(1, 200)
        gap = abs(
            correlation_quadrature(n, m) - float(exact.correlation_closed_form(n, m))
        )
        worst = max(worst, gap)
        if gap >= 1e-9:
            return False, f"quadrature gap {gap:.3e} at (n={n}, m={m})"
    for n in range(1, 201):
        for m in range(1, 201):
            if exact.exact_correlation(n, m) != exact.correlation_closed_form(n, m):
                return False, f"law broken at (n={n}, m={m})"
    return True, (
        f"law validated: quadrature worst gap {worst:.2e} on 20 pairs, "
        "then exact equality on the full 200x200 grid"
    )


def _c3_double_sum_convergence(table: MoebiusTable) -> Tuple[bool, str]:
    e100 = series.correlation_double_sum_fast(table, 100).abs_error
    e2000 = series.correlation_double_sum_fast(table, 2000).abs_error
    ok = e100 < 0.05 and e2000 < 0.01
    return ok, f"|S(100)+9/(2pi^2)| = {e100:.6f} (<0.05), |S(2000)+...| = {e2000:.6f} (<0.01)"


def _c4_fast_direct_equivalence(table: MoebiusTable) -> Tuple[bool, str]:
    direct = series.correlation_double_sum_sweep(table, 300, fast=False, exact=True)
    fast = series.correlation_double_sum_sweep(table, 300, fast=True, exact=True)
    for pd, pf in zip(direct, fast):
        if pd.value != pf.value:
            return False, f"routes disagree at N={pd.N}: {pd.value} != {pf.value}"
    for N in (2, 137, 300):
        one = series.correlation_double_sum(table, N, exact=True).value
        two = series.correlation_double_sum_fast(table, N, exact=True).value
        if one != two or one != direct[N - 1].value:
            return False, f"single-call routes disagree at N={N}"
    return True, "exact rational equality of both routes for all N <= 300"


def _c5_zeta_ratio(table: MoebiusTable) -> Tuple[bool, str]:
    value = float(arithmetic.squarefree_zeta2_partial(table, 10**4))
    gap = abs(value - 15.0 / math.pi**2)
    return gap < 2e-4, f"|sum mu^2/n^2 - 15/pi^2| = {gap:.3e} at N=10^4 (<2e-4)"


def _c6_squarefree_density(table: MoebiusTable) -> Tuple[bool, str]:
    gaps = []
    for N in (10**3, 10**4, 10**5, 10**6):
        q = arithmetic.squarefree_count(table, N)
        gap = abs(q - N * 6.0 / math.pi**2)
        if gap > 2.0 * math.sqrt(N):
            return False, f"|Q({N}) - 6N/pi^2| = {gap:.2f} > 2 sqrt(N)"
        gaps.append(f"{gap:.2f}")
    return True, "density gaps " + ", ".join(gaps) + " all within 2 sqrt(N)"


def _c7_mertens_smallness(table: MoebiusTable) -> Tuple[bool, str]:
    cutoffs = [10**3, 10**4, 10**5, 10**6]
    report = tails.classical_bound_report(table, cutoffs)
    ratios = [abs(r) for r in report.mertens_ratio]
    small = ratios[-1] < 1e-3
    decreasing = tails.mertens_ratio_strictly_decreasing(report)
    shown = ", ".join(
        f"|M({N})|/{N} = {r:.2e}" for N, r in zip(cutoffs, ratios)
    )
    if small and decreasing:
        return True, shown
    return False, (
        shown
        + f"; smallness {'ok' if small else 'FAILED'}, strict decrease "
        + ("ok" if decreasing else "FAILED (known: true Mertens values are not monotone here)")
    )


def _c8_abel_identity_suite(table: MoebiusTable) -> Tuple[bool, str]:
    rng = random.Random(_ABEL_SEED)
    worst = 0.0
    for _ in range(100):
        N = rng.randint(1, 9999)
        U = rng.randint(N + 1, 10**4)
        q = rng.randint(1, 50)
        p = rng.randint(1, 2 * q)
        gap = tails.abel_identity_check(table, N, U, Fraction(p, q))
        worst = max(worst, gap)
        if gap >= 1e-9:
            return False, f"gap {gap:.3e} at N={N}, U={U}, x={p}/{q}"
    return True, f"100 random triples, worst gap {worst:.2e} (<1e-9)"


def _c9_sine_series_trend(table: MoebiusTable) -> Tuple[bool, str]:
    xs = [k / 10 for k in range(1, 10)]

    def mean_resid(N: int) -> float:
        return math.fsum(
            abs(series.sine_series_residual(table, N, x)) for x in xs
        ) / len(xs)

    r_small = mean_resid(10**2)
    r_big = mean_resid(10**5)
    ok = r_big < r_small / 3.0
    return ok, f"mean residual {r_small:.5f} at N=10^2 vs {r_big:.5f} at N=10^5 (need < 1/3)"


def _c10_squared_identity(table: MoebiusTable) -> Tuple[bool, str]:
    worst = 0.0
    for N in (50, 200, 500):
        for x in (0.1, 0.3, 0.7):
            gap = series.sine_squared_identity_gap(table, N, x)
            worst = max(worst, gap)
            if gap >= 1e-10:
                return False, f"gap {gap:.3e} at N={N}, x={x}"
    return True, f"worst expansion gap {worst:.2e} (<1e-10)"


def _c11_figure1(table: MoebiusTable) -> Tuple[bool, str]:
    emitted = figures.figure1_csv().encode()
    golden = resources.files("fraclab").joinpath("data/figure1_golden.csv").read_bytes()
    if emitted != golden:
        return False, "figure 1 CSV is not byte-identical to the golden file"
    values = {row["n"]: row["value"] for row in figures.figure1_rows()}
    for n, v in values.items():
        if v != exact.correlation_closed_form(n, figures.FIGURE1_M):
            return False, f"figure 1 row n={n} deviates from the closed form"
    others = [values[n] for n in values if n not in (6, 12)]
    peak_six = all(values[6] > v for v in others + [values[12]])
    coprime = [values[n] for n in (5, 7, 11)]
    peak_twelve = all(values[12] > v for v in coprime)
    three_smallest = sorted(values, key=values.get)[:3]
    minima = sorted(three_smallest) == [5, 7, 11]
    if not (peak_six and peak_twelve and minima):
        return False, (
            f"structure violated: peak6={peak_six}, peak12={peak_twelve}, minima={minima}"
        )
    return True, (
        "byte-identical golden; E(6)=1/3 global peak, E(12) above the coprime "
        "minima {5,7,11}; exact ties on record: E(3)=E(12)=7/24, and E(4)=19/72 "
        "< E(2)=5/18 (no repeated-factor uplift)"
    )


def _c12_tail_diagnostics(table: MoebiusTable) -> Tuple[bool, str]:
    full = tails.tail_integral_u2(table, 1, 10**6)
    if abs(full) >= 0.05:
        return False, f"|tail(1,10^6)| = {abs(full):.4f} >= 0.05"
    worst = 0.0
    for mid in (10**3, 5 * 10**5):
        split = (
            tails.tail_integral_u2(table, 1, mid)
            + tails.tail_integral_u2(table, mid, 10**6)
        )
        worst = max(worst, abs(split - full))
    if worst >= 1e-12:
        return False, f"additivity gap {worst:.3e} >= 1e-12"
    return True, f"tail(1,10^6) = {full:.3e} (<0.05), additivity gap {worst:.2e} (<1e-12)"


CRITERIA: List[Tuple[int, str, Callable[[MoebiusTable], Tuple[bool, str]]]] = [
    (1, "diagonal averages exactly 1/3", _c1_diagonal_exact),
    (2, "closed-form correlation law", _c2_closed_form_law),
    (3, "double-sum convergence to -9/(2 pi^2)", _c3_double_sum_convergence),
    (4, "fast/direct double-sum equivalence", _c4_fast_direct_equivalence),
    (5, "sum mu^2/n^2 near 15/pi^2", _c5_zeta_ratio),
    (6, "square-free density within 2 sqrt(N)", _c6_squarefree_density),
    (7, "Mertens ratio smallness and decay", _c7_mertens_smallness),
    (8, "Abel summation identity suite", _c8_abel_identity_suite),
    (9, "sine-series residual trend", _c9_sine_series_trend),
    (10, "squared-series expansion identity", _c10_squared_identity),
    (11, "figure 1 reproduction and structure", _c11_figure1),
    (12, "Mertens tail integral diagnostics", _c12_tail_diagnostics),
]


def run_criteria(
    table: MoebiusTable, only: Optional[Sequence[int]] = None
) -> List[CriterionResult]:
    """Run the numbered criteria (all by default) against ``table``.

    The table must reach REQUIRED_LIMIT and have jordan2 built; callers
    are expected to have pre-flighted that.
    """
    wanted = set(only) if only else None
    results = []
    for number, name, func in CRITERIA:
        if wanted is not None and number not in wanted:
            continue
        start = time.perf_counter()
        try:
            passed, detail = func(table)
        except Exception as exc:  # a crashed criterion is a failed criterion
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(
            CriterionResult(number, name, passed, detail, time.perf_counter() - start)
        )
    return results
