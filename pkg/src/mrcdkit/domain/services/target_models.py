"""
Target matrices T toward which the subset scatter is shrunk.

Every constructor returns a TargetSpec that is symmetric, positive definite
and has condition number at most ``max_condition``.
"""
from typing import Optional, Union

import numpy as np
from scipy import linalg, stats

from mrcdkit.core.exceptions import DimensionMismatchError, TargetValidationError
from mrcdkit.core.mrcd_logger import get_logger
from mrcdkit.domain.models import MrcdOptions, TargetKind, TargetSpec
from mrcdkit.domain.services.robust_univariate import kendall_tau_matrix

logger = get_logger("target_models", parent_folder="services")

DEFAULT_MAX_CONDITION = 1000.0


def identity_target(p: int) -> TargetSpec:
    if p < 1:
        raise DimensionMismatchError(expected=">= 1", actual=p, what="target dimension")
    eye = np.eye(p)
    return TargetSpec(kind=TargetKind.IDENTITY, matrix=eye, eigenvectors=eye, eigenvalues=np.ones(p))


def validate_target(
    T,
    max_condition: float = DEFAULT_MAX_CONDITION,
    kind: TargetKind = TargetKind.CUSTOM,
    parameter: Optional[float] = None,
) -> TargetSpec:
    """Check symmetry, positive definiteness and conditioning, then cache the eigendecomposition."""
    T = np.asarray(T, dtype=float)
    if T.ndim != 2 or T.shape[0] != T.shape[1]:
        raise TargetValidationError(reason=f"target must be square, got shape {T.shape}")
    if not np.all(np.isfinite(T)):
        raise TargetValidationError(reason="target contains non-finite entries")
    tolerance = 1e-10 * max(1.0, float(np.abs(T).max()))
    if np.abs(T - T.T).max() > tolerance:
        raise TargetValidationError(reason="target is not symmetric")

    T = (T + T.T) / 2.0
    eigenvalues, eigenvectors = linalg.eigh(T)
    smallest = float(eigenvalues.min())
    if smallest <= 0:
        raise TargetValidationError(
            reason=f"target is not positive definite: eigenvalue {smallest:.6g}",
            min_eigenvalue=smallest,
        )
    condition = float(eigenvalues.max() / smallest)
    if condition > max_condition * (1 + 1e-12):
        raise TargetValidationError(
            reason=f"target condition number {condition:.6g} exceeds {max_condition:g}",
            condition_number=condition,
            min_eigenvalue=smallest,
        )
    return TargetSpec(kind=kind, matrix=T, eigenvectors=eigenvectors, eigenvalues=eigenvalues, parameter=parameter)


def equicorrelation_matrix_target(p: int, c: float) -> TargetSpec:
    """
    R_c = c J + (1 - c) I with its closed-form eigenstructure.

    The first eigenvector is 1/sqrt(p) with eigenvalue 1 + (p - 1)c; the
    remaining Helmert contrasts share eigenvalue 1 - c.
    """
    if p < 2:
        raise DimensionMismatchError(expected=">= 2", actual=p, what="equicorrelation dimension")
    if not -1.0 / (p - 1) < c < 1.0:
        raise TargetValidationError(reason=f"equicorrelation c = {c:.6g} outside (-1/(p-1), 1)")
    matrix = np.full((p, p), c)
    np.fill_diagonal(matrix, 1.0)
    eigenvalues = np.full(p, 1.0 - c)
    eigenvalues[0] = 1.0 + (p - 1) * c
    return TargetSpec(
        kind=TargetKind.EQUICORRELATION,
        matrix=matrix,
        eigenvectors=linalg.helmert(p, full=True).T,
        eigenvalues=eigenvalues,
        parameter=float(c),
    )


def equicorrelation_target(
    U,
    c_max: float = 0.99,
    offset: float = 0.1,
    max_condition: float = DEFAULT_MAX_CONDITION,
) -> TargetSpec:
    """
    Equicorrelation target with c the average sine-transformed Kendall tau.

    c is clamped to [-1/(p-1) + offset, min(c_max, (kappa-1)/(kappa+p-1))];
    the upper bound keeps cond(R_c) = (1+(p-1)c)/(1-c) within kappa.
    """
    U = np.asarray(U, dtype=float)
    p = U.shape[1]
    if p == 1:
        logger.info("Equicorrelation target needs p >= 2, using identity")
        return identity_target(1)

    tau = kendall_tau_matrix(U)
    upper = np.triu_indices(p, k=1)
    raw = float(np.mean(np.sin(np.pi / 2.0 * tau[upper])))
    lower_bound = -1.0 / (p - 1) + offset
    upper_bound = min(c_max, (max_condition - 1.0) / (max_condition + p - 1.0))
    c = min(max(raw, lower_bound), upper_bound)

    logger.info(
        "Equicorrelation target estimated",
        extra={"p": p, "c_raw": raw, "c": c, "clamped": c != raw},
    )
    return equicorrelation_matrix_target(p, c)


def rank_correlation_target(U, max_condition: float = DEFAULT_MAX_CONDITION) -> TargetSpec:
    """Spearman correlation matrix of U, accepted only if well-conditioned."""
    U = np.asarray(U, dtype=float)
    ranks = stats.rankdata(U, axis=0)
    matrix = np.atleast_2d(np.corrcoef(ranks, rowvar=False))
    return validate_target(matrix, max_condition=max_condition, kind=TargetKind.RANK)


def resolve_target(
    choice: Union[TargetSpec, TargetKind, str, np.ndarray, None],
    U: np.ndarray,
    options: Optional[MrcdOptions] = None,
) -> TargetSpec:
    """Build the target named by ``choice`` for the standardized data U."""
    options = options or MrcdOptions()
    p = U.shape[1]
    if isinstance(choice, TargetSpec):
        if choice.p != p:
            raise DimensionMismatchError(expected=p, actual=choice.p, what="target dimension")
        return choice
    if choice is None:
        return identity_target(p)
    if isinstance(choice, np.ndarray):
        spec = validate_target(choice, max_condition=options.max_condition)
        if spec.p != p:
            raise DimensionMismatchError(expected=p, actual=spec.p, what="target dimension")
        return spec

    kind = TargetKind(choice)
    if kind == TargetKind.IDENTITY:
        return identity_target(p)
    if kind == TargetKind.EQUICORRELATION:
        return equicorrelation_target(
            U,
            c_max=options.equicorrelation_c_max,
            offset=options.equicorrelation_offset,
            max_condition=options.max_condition,
        )
    if kind == TargetKind.RANK:
        return rank_correlation_target(U, max_condition=options.max_condition)
    raise TargetValidationError(reason="a custom target needs an explicit matrix")
