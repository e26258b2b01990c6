"""
Ground-truth scatter matrices and clean samples for the Monte Carlo harness.
"""
from typing import Optional, Tuple

import numpy as np
from scipy import linalg, stats

from mrcdkit.core.exceptions import ConditionBandError, DimensionMismatchError, FactorModelError
from mrcdkit.core.mrcd_logger import get_logger
from mrcdkit.domain.models import AlyzOptions, DataMatrix, FactorModelParams

logger = get_logger("generators", parent_folder="simulation")

N_FACTORS = 3


def to_correlation(sigma: np.ndarray) -> np.ndarray:
    scale = np.sqrt(np.diag(sigma))
    correlation = sigma / np.outer(scale, scale)
    correlation = (correlation + correlation.T) / 2.0
    np.fill_diagonal(correlation, 1.0)
    return correlation


def alyz_correlation(
    p: int,
    rng: np.random.Generator,
    options: Optional[AlyzOptions] = None,
) -> np.ndarray:
    """
    Random correlation matrix with condition number inside the configured band.

    Eigenvalues are log-spaced between 1 and the target condition number and
    rotated by a Haar-random orthogonal basis. Rescaling to unit diagonal
    moves the condition number, so the eigenvalues of the correlation matrix
    are re-spread affinely (max = cond * min, trace kept at p) and the matrix
    rescaled again until the condition number lands in the band.
    """
    options = options or AlyzOptions()
    if p < 2:
        raise DimensionMismatchError(expected=">= 2", actual=p, what="ALYZ dimension")

    eigenvalues = np.exp(np.linspace(0.0, np.log(options.condition), p))
    basis = stats.ortho_group.rvs(p, random_state=rng)
    correlation = to_correlation((basis * eigenvalues) @ basis.T)

    achieved = float("inf")
    for iteration in range(1, options.max_iter + 1):
        current, vectors = linalg.eigh(correlation)
        achieved = float(current.max() / current.min()) if current.min() > 0 else float("inf")
        if options.band_lower <= achieved <= options.band_upper:
            logger.debug("ALYZ correlation generated", extra={"p": p, "condition": achieved, "iterations": iteration})
            return correlation

        spread = (current - current.min()) / (current.max() - current.min())
        smallest = p / (p + (options.condition - 1.0) * spread.sum())
        respread = smallest * (1.0 + (options.condition - 1.0) * spread)
        correlation = to_correlation((vectors * respread) @ vectors.T)

    raise ConditionBandError(
        p=p,
        achieved=achieved,
        band=(options.band_lower, options.band_upper),
        iterations=options.max_iter,
    )


def gaussian_sample(sigma: np.ndarray, n: int, rng: np.random.Generator) -> DataMatrix:
    """n draws from N(0, sigma)."""
    factor = linalg.cholesky(sigma, lower=True)
    return DataMatrix.from_array(rng.standard_normal((n, sigma.shape[0])) @ factor.T)


def _square(values, parameter: str) -> np.ndarray:
    matrix = np.asarray(values, dtype=float).reshape(N_FACTORS, N_FACTORS)
    if np.abs(matrix - matrix.T).max() > 1e-12:
        raise FactorModelError(parameter=parameter, reason="matrix is not symmetric")
    if linalg.eigvalsh(matrix).min() < -1e-12:
        raise FactorModelError(parameter=parameter, reason="matrix is not positive semidefinite")
    return matrix


def factor_model_sample(
    n: int,
    p: int,
    params: Optional[FactorModelParams],
    rng: np.random.Generator,
) -> Tuple[DataMatrix, np.ndarray]:
    """
    Three-factor sample x_i = B f_i + e_i and its true covariance.

    Loadings B (p×3) and error standard deviations are redrawn on every call;
    sigma_j = max(floor, Gamma(shape, scale)).
    """
    params = params or FactorModelParams()
    factor_cov = _square(params.factor_cov, "factor_cov")
    loading_cov = _square(params.loading_cov, "loading_cov")

    loadings = rng.multivariate_normal(np.asarray(params.loading_mean), loading_cov, size=p)
    error_sd = np.maximum(params.error_sd_floor, rng.gamma(params.error_sd_shape, params.error_sd_scale, size=p))
    factors = rng.multivariate_normal(np.asarray(params.factor_mean), factor_cov, size=n)
    errors = rng.standard_normal((n, p)) * error_sd

    X = factors @ loadings.T + errors
    sigma = loadings @ factor_cov @ loadings.T + np.diag(error_sd ** 2)
    return DataMatrix.from_array(X), (sigma + sigma.T) / 2.0
