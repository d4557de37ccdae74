"""Finite-truncation diagnostics for Mertens-weighted tail integrals.

M(u) = M(floor(u)) is a right-continuous step function, so integrals of
M(u)/u^2 and M(u)/u over [N, U] are finite sums over unit steps:

    integral M(u)/u^2 du = sum_{k=N}^{U-1} M(k) (1/k - 1/(k+1))
    integral M(u)/u  du  = sum_{k=N}^{U-1} M(k) ln((k+1)/k)

evaluated in compensated floats (math.fsum over vectorized terms).

``abel_identity_check`` verifies the summation-by-parts expansion of
sum_{N<n<=U} mu(n)/n {nx} at finite range.  With f(u) = {ux}/u taken
right-continuous, the exact identity is

    sum_{N<n<=U} mu(n) f(n)
        = M(U) f(U) - M(N) f(N)
          - x * integral_N^U M(u)/u du
          + integral_N^U M(u) {ux} / u^2 du
          + x * sum_{N < k/x <= U} M((k/x)^-) / k,

where the last sum collects the unit downward jumps of {ux} at
u = k/x.  There are no distributions here, only explicit jump
bookkeeping: when a jump point coincides with an integer step of M the
weight is M at the left limit, which is what the closed-open step
convention forces (and what a one-step worked example confirms; see the
tie-break tests).

For rational x = p/q every breakpoint is exact: in the scaled variable
t = u * p, integer steps of M land on multiples of p and jump points on
multiples of q, so the piece sweep is all-integer and mirrors the
correlation engine.  Irrational x would make the breakpoints
approximate and the 1e-9 contract unattainable, hence rational x only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from .arithmetic import MoebiusTable

#: largest denominator accepted for the rational evaluation point
MAX_X_DENOMINATOR = 1000

#: cap on {ux}-jump points inside (N, U]; large numerators blow the
#: breakpoint count up just like large denominators would
_MAX_JUMPS = 2_000_000


@dataclass
class TailReport:
    """Mertens ratios and truncated tail integrals over a cutoff grid."""

    cutoffs: List[int]
    mertens_ratio: List[float]
    tail_u2: List[float]
    tail_u1: List[float]
    bound_fit: List[float]

    def __post_init__(self):
        k = len(self.cutoffs)
        if any(len(v) != k for v in (self.mertens_ratio, self.tail_u2,
                                     self.tail_u1, self.bound_fit)):
            raise ValueError("tail report columns must align with cutoffs")
        if any(b <= a for a, b in zip(self.cutoffs, self.cutoffs[1:])):
            raise ValueError(f"cutoffs must be strictly increasing, got {self.cutoffs}")


def _check_range(table: MoebiusTable, N: int, U: int) -> None:
    if not 1 <= N < U <= table.limit:
        raise ValueError(
            f"need 1 <= N < U <= {table.limit}, got N={N}, U={U}"
        )


def tail_integral_u2(table: MoebiusTable, N: int, U: int) -> float:
    """integral_N^U M(u)/u^2 du over the exact unit steps of M."""
    _check_range(table, N, U)
    k = np.arange(N, U, dtype=np.float64)
    terms = table.mertens[N:U].astype(np.float64) / (k * (k + 1.0))
    return math.fsum(terms.tolist())


def tail_integral_u1(table: MoebiusTable, N: int, U: int) -> float:
    """integral_N^U M(u)/u du over the exact unit steps of M."""
    _check_range(table, N, U)
    k = np.arange(N, U, dtype=np.float64)
    terms = table.mertens[N:U].astype(np.float64) * np.log1p(1.0 / k)
    return math.fsum(terms.tolist())


def _coerce_x(x) -> Fraction:
    xf = Fraction(x)
    if xf <= 0:
        raise ValueError(f"x must be positive, got {xf}")
    if xf.denominator > MAX_X_DENOMINATOR:
        raise ValueError(
            f"x denominator {xf.denominator} exceeds {MAX_X_DENOMINATOR}; "
            "breakpoints would blow up"
        )
    return xf


def _mertens_left(table: MoebiusTable, num: int, p: int) -> int:
    # M at the left limit of u = num/p: step down by one index when u is
    # an integer, since M itself steps exactly there
    if num % p == 0:
        return int(table.mertens[num // p - 1])
    return int(table.mertens[num // p])


def _jump_sum(table: MoebiusTable, N: int, U: int, p: int, q: int) -> float:
    """x * sum over jump points u0 = k/x in (N, U] of M(u0^-) / k."""
    k0 = N * p // q + 1
    k1 = U * p // q
    if k1 - k0 + 1 > _MAX_JUMPS:
        raise ValueError(
            f"x={p}/{q} puts {k1 - k0 + 1} jump points in ({N}, {U}]; "
            f"guard is {_MAX_JUMPS}"
        )
    x = p / q
    terms = [
        _mertens_left(table, k * q, p) * x / k for k in range(k0, k1 + 1)
    ]
    return math.fsum(terms)


def _step_pieces(
    table: MoebiusTable, N: int, U: int, p: int, q: int
) -> Iterator[Tuple[int, int, int, int]]:
    """Pieces (t0, t1, M, floor(ux)) of [N, U] scaled by t = u * p.

    Breakpoints are the multiples of p (integer u, where M steps) and of
    q (jump points of {ux}) merged in order; on each closed-open piece
    both M(u) = M(t0 // p) and floor(ux) = t0 // q are constant.
    """
    t = N * p
    t_max = U * p
    na = (t // p + 1) * p
    nb = (t // q + 1) * q
    mer = table.mertens
    while t < t_max:
        t1 = min(na, nb)
        if t1 > t_max:
            t1 = t_max
        yield t, t1, int(mer[t // p]), t // q
        if t1 == na:
            na += p
        if t1 == nb:
            nb += q
        t = t1


def abel_identity_check(table: MoebiusTable, N: int, U: int, x) -> float:
    """|direct sum - summation-by-parts expansion| for sum mu(n)/n {nx}.

    Both sides are evaluated independently: the left as the literal term
    sum with exact rational fractional parts, the right from Mertens
    boundary values, the two step integrals, and the jump sum.  The log
    content of -x * integral M/u and of integral M {ux}/u^2 cancels only
    numerically, which is the point of the check.
    """
    _check_range(table, N, U)
    xf = _coerce_x(x)
    p, q = xf.numerator, xf.denominator

    lhs = math.fsum(
        int(table.mu[n]) * ((n * p) % q) / q / n for n in range(N + 1, U + 1)
    )

    boundary = (
        int(table.mertens[U]) * ((U * p) % q) / q / U
        - int(table.mertens[N]) * ((N * p) % q) / q / N
    )
    drift = -(p / q) * tail_integral_u1(table, N, U)
    frac_terms = [
        m * ((p / q) * math.log1p((t1 - t0) / t0) + a * p * (1.0 / t1 - 1.0 / t0))
        for t0, t1, m, a in _step_pieces(table, N, U, p, q)
    ]
    frac_integral = math.fsum(frac_terms)
    rhs = boundary + drift + frac_integral + _jump_sum(table, N, U, p, q)
    return abs(lhs - rhs)


def floor_sum_identity_check(table: MoebiusTable, N: int, U: int, x) -> float:
    """Finite partial-summation identity for the jump sum itself.

    Applying the same summation-by-parts machinery to floor(ux)/u
    instead of {ux}/u isolates the jump sum against a Mertens boundary
    plus a log-free step integral:

        x * sum_{N<k/x<=U} M((k/x)^-)/k
            = M(U) floor(Ux)/U - M(N) floor(Nx)/N
              + integral_N^U M(u) floor(ux)/u^2 du
              - sum_{N<n<=U} mu(n) floor(nx)/n.

    Returns the absolute gap between the two sides.
    """
    _check_range(table, N, U)
    xf = _coerce_x(x)
    p, q = xf.numerator, xf.denominator
    lhs = _jump_sum(table, N, U, p, q)
    boundary = (
        int(table.mertens[U]) * (U * p // q) / U
        - int(table.mertens[N]) * (N * p // q) / N
    )
    floor_terms = [
        m * a * p * (1.0 / t0 - 1.0 / t1)
        for t0, t1, m, a in _step_pieces(table, N, U, p, q)
    ]
    mu_sum = math.fsum(
        int(table.mu[n]) * (n * p // q) / n for n in range(N + 1, U + 1)
    )
    rhs = boundary + math.fsum(floor_terms) - mu_sum
    return abs(lhs - rhs)


def classical_bound_report(
    table: MoebiusTable, cutoffs: Sequence[int], c: float = 1.0
) -> TailReport:
    """Mertens ratios, truncated tails to the table limit, and the
    informational |M(N)| e^{c sqrt(log N)} / N fit.

    The fit column is diagnostic only; no bound is asserted on it.  The
    exponent constant c is not pinned by theory at desk scale, so it is
    a parameter with default 1.
    """
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    cuts = [int(N) for N in cutoffs]
    for N in cuts:
        table._check_index(N)
    ratios, u2, u1, fit = [], [], [], []
    for N in cuts:
        m = int(table.mertens[N])
        ratios.append(m / N)
        if N < table.limit:
            u2.append(tail_integral_u2(table, N, table.limit))
            u1.append(tail_integral_u1(table, N, table.limit))
        else:
            u2.append(0.0)
            u1.append(0.0)
        fit.append(abs(m) * math.exp(c * math.sqrt(math.log(N))) / N)
    return TailReport(
        cutoffs=cuts, mertens_ratio=ratios, tail_u2=u2, tail_u1=u1, bound_fit=fit
    )


def mertens_ratio_strictly_decreasing(report: TailReport) -> bool:
    """Whether |M(N)|/N strictly decreases along the report's cutoffs."""
    mags = [abs(r) for r in report.mertens_ratio]
    return all(b < a for a, b in zip(mags, mags[1:]))
