"""Exact one-dimensional measure theory around the Lebesgue differentiation theorem."""

from .approximation import (
    ClosedSet,
    EgorovBudgetError,
    EgorovResult,
    FunctionSequenceSpec,
    continuous_approx_l1,
    dist_to_set,
    egorov_exceptional,
    lusin_compact,
    lusin_gap,
    ramp_error,
    ramp_error_bound,
    set_distance,
    tietze_extend,
    urysohn_function,
)
from .averaging import (
    LebesgueStatus,
    PointModified,
    RadiusSchedule,
    davg,
    iavg,
    is_lebesgue_pt,
    lime_inf,
    lime_sup,
    non_lebesgue_scan,
)
from .ftc import DerivativeProbe, density, density_check, ftc1_check, primitive
from .functions import (
    PiecewiseAffine,
    PiecewiseLinear,
    StepFunction,
    abs_diff_integral,
    integrate,
    l1_norm,
    markov_check,
    restrict_to_ball,
    superlevel_set,
)
from .intervals import (
    Ball,
    Interval,
    IntervalSet,
    ball_to_set,
    compact_exhaustion,
    inner_regularize,
    measure,
    normalize,
    outer_regularize,
    sball,
)
from .maximal import (
    hl_max,
    hl_maximal,
    hl_superlevel_set,
    maximal_inequality_check,
    verify_vitali,
    vitali_finite,
)
from .pipeline import ldt_bounded_check, ldt_full_scan

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "ClosedSet",
    "DerivativeProbe",
    "EgorovBudgetError",
    "EgorovResult",
    "FunctionSequenceSpec",
    "Interval",
    "IntervalSet",
    "LebesgueStatus",
    "PiecewiseAffine",
    "PiecewiseLinear",
    "PointModified",
    "RadiusSchedule",
    "StepFunction",
    "abs_diff_integral",
    "ball_to_set",
    "compact_exhaustion",
    "continuous_approx_l1",
    "davg",
    "density",
    "density_check",
    "dist_to_set",
    "egorov_exceptional",
    "ftc1_check",
    "hl_max",
    "hl_maximal",
    "hl_superlevel_set",
    "iavg",
    "inner_regularize",
    "integrate",
    "is_lebesgue_pt",
    "l1_norm",
    "ldt_bounded_check",
    "ldt_full_scan",
    "lime_inf",
    "lime_sup",
    "lusin_compact",
    "lusin_gap",
    "markov_check",
    "maximal_inequality_check",
    "measure",
    "non_lebesgue_scan",
    "normalize",
    "outer_regularize",
    "primitive",
    "ramp_error",
    "ramp_error_bound",
    "restrict_to_ball",
    "sball",
    "set_distance",
    "superlevel_set",
    "tietze_extend",
    "urysohn_function",
    "verify_vitali",
    "vitali_finite",
    "__version__",
]
