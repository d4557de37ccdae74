"""Command-line front end.

Subcommands:

    sieve        build the Moebius/Mertens table, optionally cache it
    correlate    one exact correlation E_X({nx}{mx})
    sine-series  truncations of -pi sum mu(n)/n {nx} against sin(2 pi x)
    series       partial sums of the correlation double series
    figure1      the canonical correlation profile n=1..12 against m=6
    figure2      the canonical partial-sum sweep N=1..100
    tails        Mertens ratio / tail integral report over cutoffs
    verify       run the 12 built-in acceptance criteria

Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error, 3 I/O error.  CSV output is deterministic: a fixed configuration
yields byte-identical bytes on every run.

The sieve cache path comes from --cache, falling back to the
FRACLAB_CACHE environment variable; an unreadable or undersized cache
is ignored with a warning and the sieve is rebuilt (and re-saved).
"""

from __future__ import annotations

import argparse
import io
import math
import os
import sys
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from . import acceptance, arithmetic, exact, figures, series, tails
from .arithmetic import MoebiusTable, build_jordan2, build_tables, load_cache, save_cache
from .formatting import format_decimal, rational_string

DEFAULT_LIMIT = 10**6
CACHE_ENV_VAR = "FRACLAB_CACHE"


class ConfigError(Exception):
    """Bad configuration detected before any real work starts."""


@dataclass
class RunConfig:
    sieve_limit: int = DEFAULT_LIMIT
    cache_path: Optional[str] = None
    output_path: Optional[str] = None
    precision_digits: int = 15
    jordan_fast_path: bool = True


def _warn(message: str) -> None:
    print(f"fraclab: warning: {message}", file=sys.stderr)


def _preflight(config: RunConfig, needed: int) -> None:
    if config.sieve_limit < needed:
        raise ConfigError(
            f"sieve_limit {config.sieve_limit} is below the {needed} this command needs"
        )
    if config.sieve_limit < 1 or config.sieve_limit > arithmetic.MAX_LIMIT:
        raise ConfigError(
            f"sieve_limit must be in 1..{arithmetic.MAX_LIMIT}, got {config.sieve_limit}"
        )


def _get_table(config: RunConfig, needed: int) -> MoebiusTable:
    _preflight(config, needed)
    limit = config.sieve_limit
    path = config.cache_path
    if path and os.path.exists(path):
        try:
            cached = load_cache(path)
        except ValueError as exc:
            _warn(f"ignoring sieve cache: {exc}")
        else:
            if cached.limit >= limit:
                return cached
            _warn(
                f"sieve cache at {path} only reaches {cached.limit}; rebuilding to {limit}"
            )
    table = build_tables(limit)
    if path:
        try:
            save_cache(table, path)
        except OSError as exc:
            _warn(f"could not write sieve cache {path}: {exc}")
    return table


def _emit(config: RunConfig, text: str) -> None:
    if config.output_path:
        with open(config.output_path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommand bodies
# ---------------------------------------------------------------------------

def cmd_sieve(config: RunConfig) -> int:
    table = _get_table(config, 1)
    lines = [
        f"limit,{table.limit}",
        f"mertens,{arithmetic.mertens(table, table.limit)}",
        f"squarefree_count,{arithmetic.squarefree_count(table, table.limit)}",
    ]
    _emit(config, "\n".join(lines) + "\n")
    return 0


def cmd_correlate(config: RunConfig, n: int, m: int, x_range: int, method: str) -> int:
    table_needed = 1  # correlations never touch the sieve
    _preflight(config, table_needed)
    if method == "closed-form":
        cv = exact.closed_form_value(n, m, x_range)
    else:
        cv = exact.expected_correlation(n, m, x_range)
    out = io.StringIO()
    out.write("n,m,X,value,value_exact,method,gcd\n")
    out.write(
        "%d,%d,%d,%s,%s,%s,%d\n"
        % (
            cv.n,
            cv.m,
            cv.X,
            format_decimal(cv.value, config.precision_digits),
            rational_string(cv.value),
            cv.method,
            math.gcd(n, m),
        )
    )
    _emit(config, out.getvalue())
    return 0


def _n_grid(n_max: int, points: int) -> List[int]:
    grid = np.unique(np.rint(np.geomspace(1, n_max, points)).astype(int))
    return [int(v) for v in grid]


def cmd_sine_series(config: RunConfig, x: float, n_max: int, points: int) -> int:
    table = _get_table(config, n_max)
    target = math.sin(2.0 * math.pi * x)
    out = io.StringIO()
    out.write("N,x,value,target,abs_error\n")
    digits = config.precision_digits
    for N in _n_grid(n_max, points):
        value = series.sine_series_partial(table, N, x)
        out.write(
            "%d,%s,%s,%s,%s\n"
            % (
                N,
                format_decimal(x, digits),
                format_decimal(value, digits),
                format_decimal(target, digits),
                format_decimal(abs(value - target), digits),
            )
        )
    _emit(config, out.getvalue())
    return 0


def cmd_series(config: RunConfig, n_max: int, exact_mode: bool, naive: bool) -> int:
    table = _get_table(config, n_max)
    fast = config.jordan_fast_path and not naive
    if fast:
        build_jordan2(table)
    points = series.correlation_double_sum_sweep(
        table, n_max, fast=fast, exact=exact_mode
    )
    _emit(config, figures.points_csv(points, config.precision_digits))
    return 0


def cmd_figure1(config: RunConfig) -> int:
    _preflight(config, 1)
    _emit(config, figures.figure1_csv(config.precision_digits))
    return 0


def cmd_figure2(config: RunConfig, n_max: int) -> int:
    table = _get_table(config, n_max)
    if config.jordan_fast_path:
        build_jordan2(table)
    _emit(
        config,
        figures.figure2_csv(
            table, n_max, fast=config.jordan_fast_path, digits=config.precision_digits
        ),
    )
    return 0


def cmd_tails(config: RunConfig, cutoffs: List[int], c: float) -> int:
    table = _get_table(config, max(cutoffs))
    report = tails.classical_bound_report(table, cutoffs, c)
    digits = config.precision_digits
    out = io.StringIO()
    out.write("N,mertens_ratio,tail_u2,tail_u1,bound_fit\n")
    for i, N in enumerate(report.cutoffs):
        out.write(
            "%d,%s,%s,%s,%s\n"
            % (
                N,
                format_decimal(report.mertens_ratio[i], digits),
                format_decimal(report.tail_u2[i], digits),
                format_decimal(report.tail_u1[i], digits),
                format_decimal(report.bound_fit[i], digits),
            )
        )
    _emit(config, out.getvalue())
    return 0


def cmd_verify(config: RunConfig, only: Optional[List[int]]) -> int:
    table = _get_table(config, acceptance.REQUIRED_LIMIT)
    build_jordan2(table)
    results = acceptance.run_criteria(table, only)
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.number:3d} {status} [{r.seconds:6.2f}s] {r.name}: {r.detail}")
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} criteria passed")
    report = series.residual_moment_report(table, 100)
    lines.append(
        "bookkeeping (report only): 1/2 + E(eps~_100) = %.6f vs "
        "pi^2/3 sum mu^2/n^2 + pi^2 S(100) = %.6f (Simpson sampling gap %.2e)"
        % (report.lhs, report.rhs, report.gap)
    )
    _emit(config, "\n".join(lines) + "\n")
    if passed != len(results):
        failing = ", ".join(str(r.number) for r in results if not r.passed)
        _warn(f"failing criteria: {failing}")
        return 1
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--limit", type=int, default=DEFAULT_LIMIT,
                        help="sieve limit (default 10^6)")
    common.add_argument("--cache", help="sieve cache file (overrides FRACLAB_CACHE)")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--digits", type=int, default=15,
                        help="significant digits for decimal columns")
    common.add_argument("--no-fast-path", action="store_true",
                        help="disable the gcd-grouped fast series route")

    parser = argparse.ArgumentParser(
        prog="fraclab",
        description="exact fractional-part correlations and Moebius-weighted series",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("sieve", parents=[common], help="build (and cache) the sieve table")

    p = sub.add_parser("correlate", parents=[common], help="one exact correlation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--x-range", type=int, default=1, metavar="X",
                   help="expectation range X (default 1)")
    p.add_argument("--method", choices=["piecewise", "closed-form"],
                   default="piecewise")

    p = sub.add_parser("sine-series", parents=[common],
                       help="sine-series truncations at a point")
    p.add_argument("--x", type=float, required=True, help="evaluation point")
    p.add_argument("--n-max", type=int, default=10**5)
    p.add_argument("--points", type=int, default=25, help="size of the N grid")

    p = sub.add_parser("series", parents=[common],
                       help="partial sums of the correlation double series")
    p.add_argument("--n-max", type=int, default=100)
    p.add_argument("--exact", action="store_true",
                   help="exact rational mode (n-max capped at 300 when direct)")
    p.add_argument("--naive", action="store_true",
                   help="force the direct O(N^2) route")

    sub.add_parser("figure1", parents=[common],
                   help="correlation profile n=1..12 against m=6 at X=100")

    p = sub.add_parser("figure2", parents=[common],
                       help="double-series partial sums against the limit")
    p.add_argument("--n-max", type=int, default=100)

    p = sub.add_parser("tails", parents=[common], help="Mertens tail report")
    p.add_argument("--cutoffs", default="1000,10000,100000,1000000",
                   help="comma-separated cutoff grid")
    p.add_argument("--c", type=float, default=1.0,
                   help="exponent constant for the informational bound fit")

    p = sub.add_parser("verify", parents=[common],
                       help="run the built-in acceptance criteria")
    p.add_argument("--only", help="comma-separated criterion numbers")

    return parser


def _config_from(args: argparse.Namespace) -> RunConfig:
    cache = args.cache if args.cache else os.environ.get(CACHE_ENV_VAR) or None
    return RunConfig(
        sieve_limit=args.limit,
        cache_path=cache,
        output_path=args.out,
        precision_digits=args.digits,
        jordan_fast_path=not args.no_fast_path,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    config = _config_from(args)
    try:
        if args.command == "sieve":
            return cmd_sieve(config)
        if args.command == "correlate":
            return cmd_correlate(config, args.n, args.m, args.x_range, args.method)
        if args.command == "sine-series":
            return cmd_sine_series(config, args.x, args.n_max, args.points)
        if args.command == "series":
            return cmd_series(config, args.n_max, args.exact, args.naive)
        if args.command == "figure1":
            return cmd_figure1(config)
        if args.command == "figure2":
            return cmd_figure2(config, args.n_max)
        if args.command == "tails":
            cutoffs = sorted({int(v) for v in args.cutoffs.split(",") if v.strip()})
            return cmd_tails(config, cutoffs, args.c)
        if args.command == "verify":
            only = None
            if args.only:
                only = [int(v) for v in args.only.split(",") if v.strip()]
            return cmd_verify(config, only)
        parser.error(f"unknown command {args.command}")
    except ConfigError as exc:
        print(f"fraclab: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"fraclab: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        target = getattr(exc, "filename", None) or config.output_path or ""
        print(f"fraclab: i/o error on {target}: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
