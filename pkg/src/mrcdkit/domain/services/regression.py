"""
Plug-in robust regression from the MRCD scatter of the joined matrix [X | y].

    K = | K_xx  K_xy |      slopes    = K_xx^{-1} K_xy
        | K_yx  K_yy |      intercept = m_y - m_x' slopes
"""
from typing import Optional, Sequence

import numpy as np
from scipy import linalg

from mrcdkit.core.exceptions import DimensionMismatchError
from mrcdkit.core.mrcd_logger import get_logger
from mrcdkit.domain.models import DataMatrix, MrcdOptions, OgkOptions, RobustRegressionFit
from mrcdkit.domain.services.mrcd import fit
from mrcdkit.domain.services.mrcd.estimator import TargetChoice

logger = get_logger("regression", parent_folder="services")


def least_squares(X: np.ndarray, y: np.ndarray):
    design = np.column_stack([np.ones(X.shape[0]), X])
    coefficients, *_ = np.linalg.lstsq(design, y, rcond=None)
    return coefficients[1:], float(coefficients[0])


def mrcd_regression(
    X,
    y,
    h: Optional[int] = None,
    target: TargetChoice = None,
    options: Optional[MrcdOptions] = None,
    ogk_options: Optional[OgkOptions] = None,
    predictors: Optional[Sequence[str]] = None,
    response: str = "y",
    row_labels: Optional[Sequence[str]] = None,
) -> RobustRegressionFit:
    if isinstance(X, DataMatrix):
        predictors = X.columns if predictors is None else tuple(predictors)
        row_labels = X.row_labels if row_labels is None else row_labels
        X = X.values
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    y = np.asarray(y, dtype=float).ravel()
    n, q = X.shape
    if y.shape[0] != n:
        raise DimensionMismatchError(expected=n, actual=y.shape[0], what="response length")
    predictors = tuple(predictors) if predictors is not None else tuple(f"x{j + 1}" for j in range(q))

    joined = DataMatrix.from_array(
        np.column_stack([X, y]),
        columns=predictors + (response,),
        row_labels=row_labels,
    )
    fitted = fit(joined, h=h, target=target, options=options, ogk_options=ogk_options)

    K = fitted.scatter
    slopes = linalg.solve(K[:q, :q], K[:q, q], assume_a="pos")
    intercept = float(fitted.location[q] - fitted.location[:q] @ slopes)
    ols_slopes, ols_intercept = least_squares(X, y)
    excluded = fitted.subset.complement(n)

    logger.info(
        "Robust regression fitted",
        extra={"n": n, "q": q, "h": fitted.h, "rho": fitted.rho, "excluded": len(excluded)},
    )
    return RobustRegressionFit(
        slopes=slopes,
        intercept=intercept,
        subset=fitted.subset,
        ols_slopes=ols_slopes,
        ols_intercept=ols_intercept,
        excluded_rows=excluded,
        predictors=predictors,
        response=response,
        fit=fitted,
    )


def regress_on_column(
    data: DataMatrix,
    response: str,
    h: Optional[int] = None,
    target: TargetChoice = None,
    options: Optional[MrcdOptions] = None,
    ogk_options: Optional[OgkOptions] = None,
) -> RobustRegressionFit:
    """Regress the named column on all other columns of ``data``."""
    j = data.column_index(response)
    others = [k for k in range(data.p) if k != j]
    if not others:
        raise DimensionMismatchError(expected=">= 1 predictor", actual=0, what="predictor columns")
    predictors = data.select_columns(others)
    return mrcd_regression(
        predictors,
        data.values[:, j],
        h=h,
        target=target,
        options=options,
        ogk_options=ogk_options,
        response=response,
    )
