"""Canonical CSV datasets emitted by the command-line tool.

Figure 1 is the correlation profile E_100({nx}{6x}) for n = 1..12 with
exact values; figure 2 is the partial-sum sweep of the correlation
double series against its limit.  Emission is fully deterministic, so
repeated runs are byte-identical and figure 1 is pinned by a golden
file shipped with the package.
"""

from __future__ import annotations

import io
import math
from typing import List, Sequence

from .arithmetic import MoebiusTable
from .exact import expected_correlation
from .formatting import format_decimal, rational_string
from .series import SeriesPoint, correlation_double_sum_sweep

FIGURE1_M = 6
FIGURE1_N_MAX = 12
FIGURE1_X = 100


def _relation(n: int, m: int) -> str:
    g = math.gcd(n, m)
    if g == 1:
        return "coprime"
    if n % m == 0 or m % n == 0:
        return "multiple"
    return "shared-factor"


def figure1_rows() -> List[dict]:
    rows = []
    for n in range(1, FIGURE1_N_MAX + 1):
        cv = expected_correlation(n, FIGURE1_M, FIGURE1_X)
        rows.append(
            {
                "n": n,
                "m": FIGURE1_M,
                "X": FIGURE1_X,
                "value": cv.value,
                "gcd": math.gcd(n, FIGURE1_M),
                "relation": _relation(n, FIGURE1_M),
            }
        )
    return rows


def figure1_csv(digits: int = 15) -> str:
    out = io.StringIO()
    out.write("n,m,X,value,value_exact,gcd,relation\n")
    for row in figure1_rows():
        out.write(
            "%d,%d,%d,%s,%s,%d,%s\n"
            % (
                row["n"],
                row["m"],
                row["X"],
                format_decimal(row["value"], digits),
                rational_string(row["value"]),
                row["gcd"],
                row["relation"],
            )
        )
    return out.getvalue()


def points_csv(points: Sequence[SeriesPoint], digits: int = 15) -> str:
    """Series sweep rows: N, X, value, target, abs_error."""
    out = io.StringIO()
    out.write("N,X,value,target,abs_error\n")
    for pt in points:
        out.write(
            "%d,%d,%s,%s,%s\n"
            % (
                pt.N,
                pt.X,
                format_decimal(pt.value, digits),
                format_decimal(pt.target, digits),
                format_decimal(pt.abs_error, digits),
            )
        )
    return out.getvalue()


def figure2_points(
    table: MoebiusTable, n_max: int = 100, fast: bool = True
) -> List[SeriesPoint]:
    return correlation_double_sum_sweep(
        table, n_max, fast=fast, exact=False, x_range=FIGURE1_X
    )


def figure2_csv(table: MoebiusTable, n_max: int = 100, fast: bool = True,
                digits: int = 15) -> str:
    return points_csv(figure2_points(table, n_max, fast=fast), digits)
