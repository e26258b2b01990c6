"""
Generalized concentration steps.

Given H1, the distances

    d(i) = (w_i - m_1)' K_1^{-1} (w_i - m_1),   K_1 = rho I + (1 - rho) c_alpha S_W(H1)

are computed for all n rows and H2 keeps the h smallest. det(K_2) <= det(K_1),
with equality only when H1 is already a fixed point.

For h < p the inverse goes through the Woodbury identity on the h×h system
(rho/a) I + Z Z', a = (1 - rho) c_alpha / h, Z the centered subset rows.
"""
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from mrcdkit.core.exceptions import SingularScatterError
from mrcdkit.core.mrcd_logger import get_logger
from mrcdkit.domain.models import SubsetIndex
from mrcdkit.domain.services.mrcd.scatter import (
    centered_subset,
    core_eigenvalues,
    objective_from_eigenvalues,
    subset_eigenvalues,
)

logger = get_logger("concentration", parent_folder="services")


@dataclass(frozen=True)
class ConcentrationResult:
    subset: SubsetIndex
    iterations: int
    objective: float
    converged: bool


def c_step_distances(W: np.ndarray, subset: SubsetIndex, rho: float, c_alpha: float) -> np.ndarray:
    """Squared regularized Mahalanobis distances of all rows with respect to ``subset``."""
    mean, Z = centered_subset(W, subset)
    Y = W - mean
    h, p = Z.shape
    squared_norms = np.einsum("ij,ij->i", Y, Y)

    if rho >= 1.0:
        return squared_norms

    if h >= p or rho <= 0:
        core = rho * np.eye(p) + (1.0 - rho) * c_alpha * (Z.T @ Z) / h
        try:
            factor = linalg.cho_factor(core, lower=True, check_finite=False)
        except linalg.LinAlgError as e:
            raise SingularScatterError(rho=rho, cause=e) from e
        solved = linalg.cho_solve(factor, Y.T, check_finite=False).T
        return np.clip(np.einsum("ij,ij->i", Y, solved), 0.0, None)

    a = (1.0 - rho) * c_alpha / h
    inner = (rho / a) * np.eye(h) + Z @ Z.T
    projected = Y @ Z.T
    solved = linalg.solve(inner, projected.T, assume_a="pos", check_finite=False).T
    distances = (squared_norms - np.einsum("ij,ij->i", projected, solved)) / rho
    return np.clip(distances, 0.0, None)


def smallest_h(distances: np.ndarray, h: int) -> SubsetIndex:
    """Indices of the h smallest distances; ties go to the lowest row index."""
    return SubsetIndex.from_iterable(np.argsort(distances, kind="stable")[:h])


def c_step(subset: SubsetIndex, rho: float, W: np.ndarray, c_alpha: float) -> SubsetIndex:
    return smallest_h(c_step_distances(W, subset, rho, c_alpha), subset.h)


def subset_objective(W: np.ndarray, subset: SubsetIndex, rho: float, c_alpha: float) -> float:
    return objective_from_eigenvalues(core_eigenvalues(subset_eigenvalues(W, subset), rho, c_alpha), rho)


def concentrate(
    W: np.ndarray,
    initial: SubsetIndex,
    rho: float,
    c_alpha: float,
    max_steps: int = 200,
) -> ConcentrationResult:
    """Iterate C-steps until the subset repeats."""
    current = initial
    for iteration in range(1, max_steps + 1):
        following = c_step(current, rho, W, c_alpha)
        if following == current:
            return ConcentrationResult(
                subset=current,
                iterations=iteration,
                objective=subset_objective(W, current, rho, c_alpha),
                converged=True,
            )
        current = following

    logger.warning(
        "C-steps stopped before convergence",
        extra={"max_steps": max_steps, "rho": rho, "h": initial.h},
    )
    return ConcentrationResult(
        subset=current,
        iterations=max_steps,
        objective=subset_objective(W, current, rho, c_alpha),
        converged=False,
    )
