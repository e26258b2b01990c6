"""
Orthogonalized Gnanadesikan-Kettenring (OGK) estimator.

Univariate building blocks, both driven by the Tukey biweight:

    s(x): 1-step M-scale from Qn,
          s = s0 * sqrt(mean(rho((x - med) / s0)) / 0.5),
          rho(u) = 1 - (1 - (u/c)^2)^3 for |u| <= c, 1 otherwise, c = 1.5476
    m(x): biweight weighted mean around the median, scale s0, c = 4.685

One orthogonalization pass:

    1. D = diag(s(X_j))                 (zero scales repaired)
    2. Y = X D^{-1}
    3. U_jk = (s(Y_j + Y_k)^2 - s(Y_j - Y_k)^2) / 4, U_jj = 1
    4. U = E diag(.) E',  V = Y E,  Lambda = diag(s(V_l)^2),  mu = E m(V)
    5. location = D mu,  scatter = D E Lambda E' D
"""
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy import linalg

from mrcdkit.core.exceptions import EmptySampleError
from mrcdkit.core.mrcd_logger import get_logger
from mrcdkit.domain.models import DataMatrix, OgkFit, OgkOptions
from mrcdkit.domain.services.robust_univariate import qn_scale_columns
from mrcdkit.utils.parallel import ordered_map

logger = get_logger("ogk_estimator", parent_folder="services")

# Target E[rho] at the normal model; 0.5 gives the 50% breakdown scale
M_SCALE_DELTA = 0.5


def biweight_rho(u: np.ndarray, c: float) -> np.ndarray:
    t = np.minimum((u / c) ** 2, 1.0)
    return 1.0 - (1.0 - t) ** 3


def biweight_weights(u: np.ndarray, c: float) -> np.ndarray:
    t = (u / c) ** 2
    return np.where(t < 1.0, (1.0 - t) ** 2, 0.0)


def location_scale_columns(matrix, options: Optional[OgkOptions] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Biweight weighted mean and 1-step M-scale of every column."""
    options = options or OgkOptions()
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim == 1:
        matrix = matrix.reshape(-1, 1)
    if matrix.shape[0] < 2:
        raise EmptySampleError(required=2, actual=matrix.shape[0], statistic="ogk location/scale")

    center = np.median(matrix, axis=0)
    initial = qn_scale_columns(matrix)
    positive = initial > 0
    u = (matrix - center) / np.where(positive, initial, 1.0)

    mean_rho = biweight_rho(u, options.scale_tuning).mean(axis=0)
    scale = np.where(positive, initial * np.sqrt(mean_rho / M_SCALE_DELTA), 0.0)

    weights = biweight_weights(u, options.location_tuning)
    total = weights.sum(axis=0)
    usable = positive & (total > 0)
    weighted = (weights * matrix).sum(axis=0) / np.where(usable, total, 1.0)
    location = np.where(usable, weighted, center)
    return location, scale


def m_scale_pair(options: Optional[OgkOptions] = None) -> Tuple[Callable, Callable]:
    """The univariate (m, s) pair used by OGK, as scalar functions of a sample."""
    options = options or OgkOptions()

    def m(x) -> float:
        return float(location_scale_columns(x, options)[0][0])

    def s(x) -> float:
        return float(location_scale_columns(x, options)[1][0])

    return m, s


def _repair_variances(variances: np.ndarray, floor: float) -> np.ndarray:
    largest = variances.max()
    if largest <= 0:
        return np.ones_like(variances)
    return np.maximum(variances, floor * largest)


def _pairwise_scatter(Y: np.ndarray, options: OgkOptions) -> np.ndarray:
    p = Y.shape[1]
    first, second = np.triu_indices(p, k=1)
    batches = [
        (first[start:start + options.pair_batch_size], second[start:start + options.pair_batch_size])
        for start in range(0, first.size, options.pair_batch_size)
    ]

    def covariances(batch) -> np.ndarray:
        j, k = batch
        _, plus = location_scale_columns(Y[:, j] + Y[:, k], options)
        _, minus = location_scale_columns(Y[:, j] - Y[:, k], options)
        return (plus ** 2 - minus ** 2) / 4.0

    U = np.eye(p)
    if batches:
        values = np.concatenate(ordered_map(covariances, batches, n_jobs=options.n_jobs))
        U[first, second] = values
        U[second, first] = values
    return U


def ogk_fit(X: Union[DataMatrix, np.ndarray], options: Optional[OgkOptions] = None) -> OgkFit:
    options = options or OgkOptions()
    values = X.values if isinstance(X, DataMatrix) else np.asarray(X, dtype=float)
    n, p = values.shape
    if n < 2:
        raise EmptySampleError(required=2, actual=n, statistic="ogk_fit")

    _, scales = location_scale_columns(values, options)
    if np.any(scales <= 0):
        logger.warning(
            "Zero robust scale repaired before orthogonalization",
            extra={"columns": np.flatnonzero(scales <= 0).tolist()},
        )
    D = np.sqrt(_repair_variances(scales ** 2, options.variance_floor))
    Y = values / D

    U = _pairwise_scatter(Y, options)
    _, E = linalg.eigh(U)
    V = Y @ E
    v_location, v_scale = location_scale_columns(V, options)
    Lambda = _repair_variances(v_scale ** 2, options.variance_floor)

    scatter_y = (E * Lambda) @ E.T
    scatter = D[:, None] * scatter_y * D[None, :]
    location = D * (E @ v_location)

    logger.debug("OGK fit completed", extra={"n": n, "p": p, "pairs": p * (p - 1) // 2})
    return OgkFit(location=location, scatter=(scatter + scatter.T) / 2.0)
