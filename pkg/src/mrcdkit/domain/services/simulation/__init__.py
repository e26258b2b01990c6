from .generators import alyz_correlation, factor_model_sample, gaussian_sample, to_correlation
from .contamination import contaminate, n_outliers
from .metrics import mse, squared_error
from .experiment import replication_rng, generate_replication, run_replication, run_experiment

__all__ = [
    "alyz_correlation",
    "factor_model_sample",
    "gaussian_sample",
    "to_correlation",
    "contaminate",
    "n_outliers",
    "mse",
    "squared_error",
    "replication_rng",
    "generate_replication",
    "run_replication",
    "run_experiment",
]
