"""fraclab: exact fractional-part correlations and Moebius-weighted series.

The package sieves the Moebius and Mertens functions, evaluates the
correlation E_X({nx}{mx}) in exact rational arithmetic by breakpoint
decomposition, sums the Moebius-weighted sine series and the
off-diagonal correlation double series toward its limit -9/(2 pi^2),
and checks the finite Abel-summation identities behind the Mertens tail
integrals.  See the ``fraclab`` command for the CSV front end and the
``verify`` subcommand for the built-in acceptance suite.
"""

from .arithmetic import (
    MoebiusTable,
    Rational,
    build_jordan2,
    build_tables,
    jordan2,
    load_cache,
    mertens,
    moebius_harmonic,
    save_cache,
    squarefree_count,
    squarefree_zeta2_partial,
)
from .exact import (
    CorrelationValue,
    correlation_closed_form,
    cross_moment,
    exact_correlation,
    expected_correlation,
    floor_second_moment,
    mean_square_fractional,
)
from .series import (
    DOUBLE_SUM_LIMIT,
    SeriesPoint,
    correlation_double_sum,
    correlation_double_sum_fast,
    correlation_double_sum_sweep,
    mobius_double_fourier,
    residual_moment_report,
    sawtooth_fourier_partial,
    sine_series_partial,
    sine_series_residual,
    sine_squared_identity_gap,
    squared_residual,
    trig_moments,
)
from .tails import (
    TailReport,
    abel_identity_check,
    classical_bound_report,
    floor_sum_identity_check,
    mertens_ratio_strictly_decreasing,
    tail_integral_u1,
    tail_integral_u2,
)

__version__ = "0.1.0"

__all__ = [
    "MoebiusTable",
    "Rational",
    "build_jordan2",
    "build_tables",
    "jordan2",
    "load_cache",
    "mertens",
    "moebius_harmonic",
    "save_cache",
    "squarefree_count",
    "squarefree_zeta2_partial",
    "CorrelationValue",
    "correlation_closed_form",
    "cross_moment",
    "exact_correlation",
    "expected_correlation",
    "floor_second_moment",
    "mean_square_fractional",
    "DOUBLE_SUM_LIMIT",
    "SeriesPoint",
    "correlation_double_sum",
    "correlation_double_sum_fast",
    "correlation_double_sum_sweep",
    "mobius_double_fourier",
    "residual_moment_report",
    "sawtooth_fourier_partial",
    "sine_series_partial",
    "sine_series_residual",
    "sine_squared_identity_gap",
    "squared_residual",
    "trig_moments",
    "TailReport",
    "abel_identity_check",
    "classical_bound_report",
    "floor_sum_identity_check",
    "mertens_ratio_strictly_decreasing",
    "tail_integral_u1",
    "tail_integral_u2",
    "__version__",
]
