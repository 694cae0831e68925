"""Overflow-safe weighted Jacobi polynomial evaluation and bound verification.

The package evaluates orthonormal Jacobi polynomials in signed log-magnitude
arithmetic, forms the weighted square M on configurable windows, builds Sonin
envelopes, locates every local extremum, and checks a catalog of closed-form
bounds and exact algebraic identities over parameter grids.
"""

from ._version import __version__
from .bounds import (
    SHARP_RATIO,
    BoundId,
    HypothesisError,
    gamma_ratio_check,
    gamma_ratio_log,
    gamma_ratio_log_gap,
    pointwise_bound,
    rhs_bound,
    theorem1_ratio,
    v_factors,
)
from .envelope import (
    Geometry,
    IdentityCheck,
    OutsideOscillationRegionError,
    SoninPoint,
    coeffs_full,
    coeffs_window,
    delta_squared,
    geometry,
    identity_checks,
    sonin_S,
    sonin_point,
)
from .extrema import (
    ExtremumRecord,
    GridTooCoarseError,
    StructureReport,
    global_max,
    scan_extrema,
    structure_checks,
)
from .jacobi import (
    ALPHA_FLOOR,
    Params,
    WeightedValue,
    Window,
    eval_orthonormal,
    eval_orthonormal_deriv,
    log_norm,
    ode_residual,
    value_at_zero_even,
    weighted_M,
    weighted_ln_parts,
)
from .scaled import ScaledReal
from .verify import (
    ConfigError,
    FitResult,
    Report,
    SweepConfig,
    Tolerances,
    VerificationResult,
    check_ids,
    fit_exponent,
    parse_report_csv,
    render_csv,
    render_json,
    run_check,
    sweep,
    write_report,
)

__all__ = [
    "__version__",
    "ALPHA_FLOOR",
    "SHARP_RATIO",
    "BoundId",
    "ConfigError",
    "ExtremumRecord",
    "FitResult",
    "Geometry",
    "GridTooCoarseError",
    "HypothesisError",
    "IdentityCheck",
    "OutsideOscillationRegionError",
    "Params",
    "Report",
    "ScaledReal",
    "SoninPoint",
    "StructureReport",
    "SweepConfig",
    "Tolerances",
    "VerificationResult",
    "WeightedValue",
    "Window",
    "check_ids",
    "coeffs_full",
    "coeffs_window",
    "delta_squared",
    "eval_orthonormal",
    "eval_orthonormal_deriv",
    "fit_exponent",
    "gamma_ratio_check",
    "gamma_ratio_log",
    "gamma_ratio_log_gap",
    "geometry",
    "global_max",
    "identity_checks",
    "log_norm",
    "ode_residual",
    "parse_report_csv",
    "render_csv",
    "render_json",
    "pointwise_bound",
    "rhs_bound",
    "run_check",
    "scan_extrema",
    "sonin_S",
    "sonin_point",
    "structure_checks",
    "sweep",
    "theorem1_ratio",
    "v_factors",
    "value_at_zero_even",
    "weighted_M",
    "weighted_ln_parts",
    "write_report",
]
