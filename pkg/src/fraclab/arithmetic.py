"""Sieved Moebius/Mertens tables and the exact partial sums built on them.

A single linear (smallest-prime-factor) sieve pass produces, for all
1 <= n <= limit:

    mu[n]         Moebius function: 0 when a square divides n, otherwise
                  (-1)**omega(n)
    mertens[n]    M(n) = sum_{k <= n} mu(k)
    omega[n]      number of distinct prime factors
    squarefree[n] mu[n] != 0

Conventions fixed here: mu(1) = 1, omega(1) = 0, M(0) = 0.

The Jordan totient array J2, with J2(d) = d**2 * prod_{p|d} (1 - 1/p**2)
and sum_{d|k} J2(d) = k**2, is built on demand via ``build_jordan2``; it
backs the gcd-grouped acceleration of the correlation double sum.

A built table is immutable by convention and safe to share across
threads; every function here is a pure read of the arrays.

Exact rational partial sums (``moebius_harmonic``,
``squarefree_zeta2_partial``) are returned as ``Fraction`` up to
N = EXACT_SUM_LIMIT = 10**4 and as compensated floats beyond; the two
paths agree to 1e-12 where they overlap.  The exact path accumulates
integer numerators over a common denominator lcm(1..N) (or its square)
so only one gcd normalization happens per call.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import numpy as np

#: hard ceiling on sieve size; beyond this the arrays get into the
#: multi-gigabyte range and a request is more likely a bug than intent
MAX_LIMIT = 10**8

#: crossover between exact-Fraction and compensated-float accumulation
EXACT_SUM_LIMIT = 10**4

ZETA2 = math.pi**2 / 6.0
ZETA4 = math.pi**4 / 90.0
SQUAREFREE_DENSITY = 1.0 / ZETA2  # 6/pi^2

CACHE_MAGIC = b"MUV1"

Rational = Fraction


@dataclass
class MoebiusTable:
    """Sieve arrays indexed 1..limit (index 0 is unused padding).

    ``omega`` is None when the table was restored from a mu-only cache
    file, since distinct-prime-factor counts cannot be recovered from mu
    alone.  ``jordan2`` is None until ``build_jordan2`` is called.
    """

    limit: int
    mu: np.ndarray                      # int8
    mertens: np.ndarray                 # int64, mertens[0] = 0
    squarefree: np.ndarray              # bool
    omega: Optional[np.ndarray] = None  # int8
    jordan2: Optional[np.ndarray] = field(default=None, repr=False)  # int64

    def _check_index(self, n: int) -> None:
        if not 1 <= n <= self.limit:
            raise IndexError(f"n={n} outside table range 1..{self.limit}")


_table_memo: dict[int, MoebiusTable] = {}


def build_tables(limit: int) -> MoebiusTable:
    """Sieve mu, M, omega and square-free flags up to ``limit``.

    Linear sieve: every integer is crossed off exactly once through its
    smallest prime factor, so the pass is O(limit) and the recurrences

        mu(i*p) = -mu(i), omega(i*p) = omega(i) + 1   when p does not divide i
        mu(i*p) = 0,      omega(i*p) = omega(i)       when p divides i

    need no special cases.  Output is deterministic for a given limit
    and memoized, so repeated calls share one table.
    """
    if limit < 1:
        raise ValueError(f"sieve limit must be >= 1, got {limit}")
    if limit > MAX_LIMIT:
        raise ValueError(f"sieve limit {limit} exceeds the {MAX_LIMIT} memory guard")
    memo = _table_memo.get(limit)
    if memo is not None:
        return memo

    mu = [0] * (limit + 1)
    omega = [0] * (limit + 1)
    spf = [0] * (limit + 1)
    primes: list[int] = []
    mu[1] = 1
    for i in range(2, limit + 1):
        if spf[i] == 0:
            spf[i] = i
            primes.append(i)
            mu[i] = -1
            omega[i] = 1
        si = spf[i]
        for p in primes:
            ip = i * p
            if p > si or ip > limit:
                break
            spf[ip] = p
            if p == si:
                mu[ip] = 0
                omega[ip] = omega[i]
            else:
                mu[ip] = -mu[i]
                omega[ip] = omega[i] + 1

    mu_arr = np.array(mu, dtype=np.int8)
    mertens = np.zeros(limit + 1, dtype=np.int64)
    np.cumsum(mu_arr[1:], out=mertens[1:])
    table = MoebiusTable(
        limit=limit,
        mu=mu_arr,
        mertens=mertens,
        squarefree=mu_arr != 0,
        omega=np.array(omega, dtype=np.int8),
    )
    _table_memo[limit] = table
    return table


def _primes_upto(n: int) -> np.ndarray:
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0]


def build_jordan2(table: MoebiusTable) -> MoebiusTable:
    """Attach the J2 array to ``table`` (idempotent).

    J2(d) = d^2 prod_{p|d} (1 - 1/p^2), computed multiplicatively: start
    from d^2 and, prime by prime, replace a factor p^2 with p^2 - 1.
    The running value stays divisible by p^2 at the division step, so
    integer arithmetic is exact.
    """
    if table.jordan2 is not None:
        return table
    j2 = np.arange(table.limit + 1, dtype=np.int64) ** 2
    j2[0] = 0
    for p in _primes_upto(table.limit):
        pp = int(p) * int(p)
        j2[p::p] = j2[p::p] // pp * (pp - 1)
    table.jordan2 = j2
    return table


def mertens(table: MoebiusTable, n: int) -> int:
    """M(n) = sum_{m <= n} mu(m)."""
    table._check_index(n)
    return int(table.mertens[n])


def squarefree_count(table: MoebiusTable, N: int) -> int:
    """Q(N) = number of square-free integers <= N (equals sum mu^2)."""
    table._check_index(N)
    return int(np.count_nonzero(table.squarefree[1 : N + 1]))


def jordan2(table: MoebiusTable, d: int) -> int:
    """J2(d); requires ``build_jordan2`` to have run."""
    if table.jordan2 is None:
        raise RuntimeError("jordan2 array not built; call build_jordan2 first")
    table._check_index(d)
    return int(table.jordan2[d])


def moebius_harmonic(
    table: MoebiusTable, N: int, exact: Optional[bool] = None
) -> Union[Fraction, float]:
    """P(N) = sum_{n <= N} mu(n)/n.

    Exact Fraction for N <= EXACT_SUM_LIMIT, compensated float beyond
    (lcm(1..N) has ~0.43*N digits, so exact accumulation past 10^4 is
    not worth the bigint cost).  Pass ``exact`` to force a path.
    """
    table._check_index(N)
    if exact is None:
        exact = N <= EXACT_SUM_LIMIT
    if exact:
        L = math.lcm(*range(1, N + 1))
        num = sum(int(table.mu[n]) * (L // n) for n in range(1, N + 1))
        return Fraction(num, L)
    n = np.arange(1, N + 1, dtype=np.float64)
    terms = table.mu[1 : N + 1].astype(np.float64) / n
    return math.fsum(terms.tolist())


def squarefree_zeta2_partial(
    table: MoebiusTable, N: int, exact: Optional[bool] = None
) -> Union[Fraction, float]:
    """sum_{n <= N} mu(n)^2 / n^2, tending to 15/pi^2.

    Same exact/float crossover as ``moebius_harmonic``; the exact path
    uses the common denominator lcm(1..N)^2.
    """
    table._check_index(N)
    if exact is None:
        exact = N <= EXACT_SUM_LIMIT
    if exact:
        L = math.lcm(*range(1, N + 1))
        num = sum((L // n) ** 2 for n in range(1, N + 1) if table.mu[n] != 0)
        return Fraction(num, L * L)
    n = np.arange(1, N + 1, dtype=np.float64)
    terms = table.squarefree[1 : N + 1].astype(np.float64) / (n * n)
    return math.fsum(terms.tolist())


def save_cache(table: MoebiusTable, path) -> None:
    """Write the binary sieve cache: b"MUV1", little-endian uint64 limit,
    then mu(1..limit) as signed bytes."""
    payload = table.mu[1:].astype(np.int8).tobytes()
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(struct.pack("<Q", table.limit))
        fh.write(payload)


def load_cache(path) -> MoebiusTable:
    """Restore a table from a cache file written by ``save_cache``.

    Mertens and square-free flags are recomputed from mu (cheap prefix
    work); omega is left as None since the file carries mu only.
    Raises ValueError on a bad magic, a bad header, or a truncated body.
    """
    with open(path, "rb") as fh:
        magic = fh.read(4)
        if magic != CACHE_MAGIC:
            raise ValueError(f"bad sieve cache magic {magic!r} in {path}")
        header = fh.read(8)
        if len(header) != 8:
            raise ValueError(f"truncated sieve cache header in {path}")
        (limit,) = struct.unpack("<Q", header)
        if not 1 <= limit <= MAX_LIMIT:
            raise ValueError(f"sieve cache limit {limit} out of range in {path}")
        body = fh.read(limit)
        if len(body) != limit:
            raise ValueError(f"truncated sieve cache body in {path}")
    mu = np.zeros(limit + 1, dtype=np.int8)
    mu[1:] = np.frombuffer(body, dtype=np.int8)
    if mu[1] != 1 or not np.all((mu >= -1) & (mu <= 1)):
        raise ValueError(f"sieve cache in {path} holds values outside {{-1,0,1}}")
    mertens_arr = np.zeros(limit + 1, dtype=np.int64)
    np.cumsum(mu[1:], out=mertens_arr[1:])
    return MoebiusTable(
        limit=int(limit),
        mu=mu,
        mertens=mertens_arr,
        squarefree=mu != 0,
        omega=None,
    )
