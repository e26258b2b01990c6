from .scatter import (
    validate_h,
    consistency_factor,
    regularized_scatter,
    objective,
    calibrate_rho,
)
from .concentration import c_step, c_step_distances, concentrate
from .initial_subsets import InitialStart, START_NAMES, compute_starts, initial_subsets
from .estimator import (
    PreparedData,
    default_h,
    prepare,
    fit,
    precision,
    robust_distances,
    scan_h,
)
from .diagnostics import outlier_cutoff, flag_outliers

__all__ = [
    "validate_h",
    "consistency_factor",
    "regularized_scatter",
    "objective",
    "calibrate_rho",
    "c_step",
    "c_step_distances",
    "concentrate",
    "InitialStart",
    "START_NAMES",
    "compute_starts",
    "initial_subsets",
    "PreparedData",
    "default_h",
    "prepare",
    "fit",
    "precision",
    "robust_distances",
    "scan_h",
    "outlier_cutoff",
    "flag_outliers",
]
