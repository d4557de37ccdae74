"""Exact rational averages of products of fractional parts and floors.

The central object is the single-period correlation

    C(n, m) = integral_0^1 {nx}{mx} dx

and its range average E_X = (1/X) integral_0^X {nx}{mx} dx for integer
X >= 1.  Because both sawtooth factors have period 1 in x, E_X equals
C(n, m) for every integer X; ``expected_correlation`` computes the
[0, X] integral directly and checks that equality instead of assuming
it.

Integration is breakpoint decomposition made integer-exact.  Substitute
x = t / L with L = lcm(n, m), p = L/n, q = L/m.  Then nx = t/p and
mx = t/q, the discontinuities of the two sawtooths land on the integer
multiples of p and q, and on each piece [t0, t1] between consecutive
breakpoints the integrand is the quadratic (t - A)(t - B) / (p*q) with
A = p*floor(t0/p), B = q*floor(t0/q).  Six times the piece integral,

    2*(t1^3 - t0^3) - 3*(A + B)*(t1^2 - t0^2) + 6*A*B*(t1 - t0),

is an integer, so the whole correlation is one Fraction built from an
integer total: Fraction(total, 6*L*p*q*X).  No rational arithmetic in
the loop, no rounding anywhere.

Pieces are traversed closed-open, so the one-sided values at shared
breakpoints (where k/n = j/m) never contribute; they are measure zero.

The closed-form law C(n, m) = 1/4 + gcd(n, m)^2 / (12*n*m) is exposed
separately (``correlation_closed_form``); nothing in the piecewise
engine uses it, which is what makes the exact equality of the two a
meaningful test rather than a tautology.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

Rational = Fraction

#: guard on n + m, which bounds the single-period breakpoint count
PAIR_SIZE_LIMIT = 10**6

#: largest t-range for the vectorized int64 sweep; intermediates are
#: bounded by 14*T^3, which must stay below 2^63
_VECTOR_T_LIMIT = 800_000

#: piece-count cap for the direct [0, X] cross-check sweep
_DIRECT_CHECK_LIMIT = 2_000_000

METHOD_PIECEWISE = "piecewise"
METHOD_CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class CorrelationValue:
    """A correlation E_X({nx}{mx}) with the route that produced it."""

    n: int
    m: int
    X: int
    value: Fraction
    method: str

    def __post_init__(self):
        if not Fraction(1, 4) <= self.value <= Fraction(1, 3):
            raise ValueError(
                f"correlation {self.value} for (n={self.n}, m={self.m}) "
                "outside the provable [1/4, 1/3] range"
            )


def _check_pair(n: int, m: int) -> None:
    if n < 1 or m < 1:
        raise ValueError(f"n and m must be positive integers, got ({n}, {m})")
    if n + m > PAIR_SIZE_LIMIT:
        raise ValueError(
            f"n + m = {n + m} exceeds the breakpoint guard {PAIR_SIZE_LIMIT}"
        )


def _sweep_total_numpy(T: int, p: int, q: int) -> int:
    if p == q:
        ts = np.arange(0, T + 1, p, dtype=np.int64)
    else:
        ts = np.union1d(
            np.arange(0, T + 1, p, dtype=np.int64),
            np.arange(0, T + 1, q, dtype=np.int64),
        )
    t0 = ts[:-1]
    t1 = ts[1:]
    A = t0 - t0 % p
    B = t0 - t0 % q
    i6 = (
        2 * (t1**3 - t0**3)
        - 3 * (A + B) * (t1**2 - t0**2)
        + 6 * A * B * (t1 - t0)
    )
    # each piece value is tiny (<= 6*p*q*min(p,q)); only the per-element
    # cubes needed the 14*T^3 headroom
    return int(i6.sum())


def _sweep_total_python(T: int, p: int, q: int) -> int:
    total = 0
    t = 0
    na, nb = p, q
    while t < T:
        t1 = min(na, nb)
        if t1 > T:
            t1 = T
        A = t - t % p
        B = t - t % q
        total += (
            2 * (t1**3 - t**3)
            - 3 * (A + B) * (t1**2 - t**2)
            + 6 * A * B * (t1 - t)
        )
        if t1 == na:
            na += p
        if t1 == nb:
            nb += q
        t = t1
    return total


def _sweep_total(T: int, p: int, q: int) -> int:
    """Sum of 6 * integral_{piece} (t - A)(t - B) dt over [0, T]."""
    if T <= _VECTOR_T_LIMIT:
        return _sweep_total_numpy(T, p, q)
    return _sweep_total_python(T, p, q)


def exact_correlation(n: int, m: int) -> Fraction:
    """integral_0^1 {nx}{mx} dx as an exact Fraction.

    Denominators reach the scale of lcm(n, m)^2 before reduction, hence
    arbitrary-precision integers throughout; fixed-width arithmetic
    would overflow silently for moderate coprime pairs.
    """
    _check_pair(n, m)
    g = math.gcd(n, m)
    L = n // g * m
    p, q = L // n, L // m
    return Fraction(_sweep_total(L, p, q), 6 * L * p * q)


def expected_correlation(n: int, m: int, X: int) -> CorrelationValue:
    """(1/X) integral_0^X {nx}{mx} dx, exact, for integer X >= 1.

    Integer x-periodicity of the integrand makes this equal to
    exact_correlation(n, m); whenever the [0, X] sweep is affordable
    (piece count below _DIRECT_CHECK_LIMIT) the equality is computed
    and verified, not assumed.  Non-integer X is rejected.
    """
    if isinstance(X, bool) or not isinstance(X, (int, np.integer)):
        raise ValueError(f"X must be a positive integer, got {X!r}")
    if X < 1:
        raise ValueError(f"X must be >= 1, got {X}")
    _check_pair(n, m)
    X = int(X)
    one_period = exact_correlation(n, m)
    if X * (n + m) <= _DIRECT_CHECK_LIMIT:
        g = math.gcd(n, m)
        L = n // g * m
        p, q = L // n, L // m
        direct = Fraction(_sweep_total(X * L, p, q), 6 * L * p * q * X)
        if direct != one_period:
            raise AssertionError(
                f"period-1 identity violated for (n={n}, m={m}, X={X}): "
                f"{direct} != {one_period}"
            )
        value = direct
    else:
        value = one_period
    return CorrelationValue(n=n, m=m, X=X, value=value, method=METHOD_PIECEWISE)


def correlation_closed_form(n: int, m: int) -> Fraction:
    """1/4 + gcd(n, m)^2 / (12 n m), the closed-form correlation law."""
    _check_pair(n, m)
    g = math.gcd(n, m)
    return Fraction(1, 4) + Fraction(g * g, 12 * n * m)


def closed_form_value(n: int, m: int, X: int) -> CorrelationValue:
    """CorrelationValue carrying the closed-form route tag."""
    if X < 1:
        raise ValueError(f"X must be >= 1, got {X}")
    return CorrelationValue(
        n=n, m=m, X=int(X), value=correlation_closed_form(n, m),
        method=METHOD_CLOSED_FORM,
    )


# ---------------------------------------------------------------------------
# Floor and cross moments over [0, X]
# ---------------------------------------------------------------------------

#: above this nX the brute stepwise verification loops are skipped
_STEPWISE_VERIFY_LIMIT = 10**5


def _floor_square_stepwise(nX: int) -> Fraction:
    # (1/nX) * sum_{k=1}^{nX-1} k^2, each term k^2 * (length-1 interval)
    return Fraction(sum(k * k for k in range(1, nX)), nX)


def _cross_stepwise(nX: int) -> Fraction:
    # (1/nX) * sum_k k * integral_k^{k+1} u du = (1/nX) * sum_k k((k+1)^2-k^2)/2
    return Fraction(sum(k * ((k + 1) ** 2 - k * k) for k in range(1, nX)), 2 * nX)


def floor_second_moment(n: int, X: int) -> Fraction:
    """E_X(floor(nx)^2) = (nX - 1)(2nX - 1) / 6.

    The closed form is re-derived per call from the power-sum formula
    sum k^2 = K(K+1)(2K+1)/6 with K = nX - 1, and for small nX also
    against the literal stepwise sum, so an algebra slip cannot survive
    silently.
    """
    if n < 1 or X < 1:
        raise ValueError(f"n and X must be positive integers, got ({n}, {X})")
    nX = n * X
    K = nX - 1
    closed = Fraction(K * (2 * nX - 1), 6)
    faulhaber = Fraction(K * (K + 1) * (2 * K + 1), 6 * nX)
    if closed != faulhaber:
        raise AssertionError(f"floor moment simplification broke at nX={nX}")
    if nX <= _STEPWISE_VERIFY_LIMIT and closed != _floor_square_stepwise(nX):
        raise AssertionError(f"floor moment stepwise check broke at nX={nX}")
    return closed


def cross_moment(n: int, X: int) -> Fraction:
    """E_X(nx * floor(nx)) = (nX - 1)(2nX - 1)/6 + (nX - 1)/4.

    Verified against the exact piecewise integration of u*floor(u)
    (substituting u = nx) whenever nX is small enough to loop.
    """
    if n < 1 or X < 1:
        raise ValueError(f"n and X must be positive integers, got ({n}, {X})")
    nX = n * X
    K = nX - 1
    value = Fraction(K * (2 * nX - 1), 6) + Fraction(K, 4)
    if nX <= _STEPWISE_VERIFY_LIMIT and value != _cross_stepwise(nX):
        raise AssertionError(f"cross moment stepwise check broke at nX={nX}")
    return value


def mean_square_fractional(n: int, X: int) -> Fraction:
    """E_X({nx}^2) assembled from the moment chain, not shortcut to 1/3.

    {nx}^2 = (nx)^2 - 2 nx floor(nx) + floor(nx)^2, and
    E_X((nx)^2) = n^2 X^2 / 3 exactly, so the chain

        n^2 X^2 / 3 - 2 * cross_moment + floor_second_moment

    must collapse to 1/3 for every (n, X); tests enforce that collapse.
    """
    return (
        Fraction(n * n * X * X, 3)
        - 2 * cross_moment(n, X)
        + floor_second_moment(n, X)
    )
