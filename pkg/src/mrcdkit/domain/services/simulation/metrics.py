from typing import Sequence

import numpy as np

from mrcdkit.core.exceptions import DimensionMismatchError, EmptySampleError


def squared_error(estimate: np.ndarray, truth: np.ndarray) -> float:
    """Mean squared entrywise difference (1/p^2) sum (S - Sigma)^2 of one pair."""
    estimate = np.asarray(estimate, dtype=float)
    truth = np.asarray(truth, dtype=float)
    if estimate.shape != truth.shape or estimate.ndim != 2 or estimate.shape[0] != estimate.shape[1]:
        raise DimensionMismatchError(expected=truth.shape, actual=estimate.shape, what="scatter matrix")
    return float(np.sum((estimate - truth) ** 2) / truth.shape[0] ** 2)


def mse(estimates: Sequence[np.ndarray], truths: Sequence[np.ndarray]) -> float:
    """(1/M) (1/p^2) sum_m sum_kl (S_m - Sigma_m)_kl^2"""
    if len(estimates) != len(truths):
        raise DimensionMismatchError(expected=len(truths), actual=len(estimates), what="number of estimates")
    if not estimates:
        raise EmptySampleError(required=1, actual=0, statistic="mse")
    return float(np.mean([squared_error(estimate, truth) for estimate, truth in zip(estimates, truths)]))
