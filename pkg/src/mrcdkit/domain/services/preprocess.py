"""
Standardization and target whitening.

    u_i = D^{-1} (x_i - nu)          nu: column medians, D: column Qn scales
    w_i = Lambda^{-1/2} Q' u_i       T = Q diag(Lambda) Q'

so that S_W(H) = Lambda^{-1/2} Q' S_U(H) Q Lambda^{-1/2} for every subset H.
"""
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from mrcdkit.core.exceptions import DegenerateVariableError, DimensionMismatchError, EmptySampleError
from mrcdkit.domain.models import DataMatrix, TargetSpec
from mrcdkit.domain.services.robust_univariate import qn_scale_columns


@dataclass(frozen=True)
class Standardization:
    nu: np.ndarray
    D: np.ndarray
    U: np.ndarray

    def restore(self, U: np.ndarray) -> np.ndarray:
        """Map standardized rows back to data units."""
        return self.nu + np.asarray(U) * self.D


@dataclass(frozen=True)
class WhitenedData:
    W: np.ndarray
    Q: np.ndarray
    Lambda: np.ndarray


def standardize(X: DataMatrix) -> Standardization:
    """Center each column at its median and divide by its Qn scale."""
    if X.n < 2:
        raise EmptySampleError(required=2, actual=X.n, statistic="standardize")
    nu = np.median(X.values, axis=0)
    D = qn_scale_columns(X.values)
    degenerate = np.flatnonzero(~(D > 0))
    if degenerate.size:
        j = int(degenerate[0])
        raise DegenerateVariableError(column=X.columns[j], column_index=j)
    return Standardization(nu=nu, D=D, U=(X.values - nu) / D)


def target_transform(U: np.ndarray, target: TargetSpec) -> WhitenedData:
    """W = U Q Lambda^{-1/2}; the identity target is passed through untouched."""
    U = np.asarray(U, dtype=float)
    if U.shape[1] != target.p:
        raise DimensionMismatchError(expected=target.p, actual=U.shape[1], what="target dimension")
    if target.is_identity:
        p = target.p
        return WhitenedData(W=U.copy(), Q=np.eye(p), Lambda=np.ones(p))
    return WhitenedData(W=U @ target.inverse_sqrt_factor, Q=target.eigenvectors, Lambda=target.eigenvalues)


def subset_mean_cov(Xsub: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Mean and divisor-h scatter of the rows of an h×p matrix."""
    Xsub = np.asarray(Xsub, dtype=float)
    if Xsub.ndim != 2 or Xsub.shape[0] == 0:
        raise EmptySampleError(required=1, actual=0 if Xsub.ndim != 2 else Xsub.shape[0], statistic="subset_mean_cov")
    mean = Xsub.mean(axis=0)
    centered = Xsub - mean
    scatter = centered.T @ centered / Xsub.shape[0]
    return mean, (scatter + scatter.T) / 2.0
