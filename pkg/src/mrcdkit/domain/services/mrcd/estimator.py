"""
MRCD fitting.

Final estimates for the selected subset H (data units):

    location  = nu + D * mean(U_H)
    S*        = D_W^{-1} S_W(H) D_W^{-1},       D_W = sqrt(diag S_W(H))
    K_core    = rho I + (1 - rho) c_alpha D_W S* D_W
    scatter   = D Q Lambda^{1/2} K_core Lambda^{1/2} Q' D
    precision = D^{-1} Q Lambda^{-1/2} K_core^{-1} Lambda^{-1/2} Q' D^{-1}

K_core is the matrix whose determinant the subset search minimizes, so the
fitted scatter keeps the conditioning bound of the calibrated rho.
"""
import dataclasses
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np
from scipy import linalg

from mrcdkit.core.exceptions import (
    DimensionMismatchError,
    InvalidOptionError,
    InvalidSubsetSizeError,
    SingularScatterError,
)
from mrcdkit.core.mrcd_logger import get_logger
from mrcdkit.domain.models import (
    DataMatrix,
    HScanRow,
    MrcdFit,
    MrcdOptions,
    OgkOptions,
    StartDiagnostics,
    SubsetIndex,
    TargetKind,
    TargetSpec,
)
from mrcdkit.domain.services.mrcd.concentration import concentrate
from mrcdkit.domain.services.mrcd.initial_subsets import InitialStart, compute_starts
from mrcdkit.domain.services.mrcd.scatter import (
    calibrate_rho,
    centered_subset,
    consistency_factor,
    core_eigenvalues,
    objective_from_eigenvalues,
    subset_eigenvalues,
    validate_h,
)
from mrcdkit.domain.services.preprocess import Standardization, WhitenedData, standardize, target_transform
from mrcdkit.domain.services.target_models import resolve_target
from mrcdkit.utils.parallel import ordered_map

logger = get_logger("mrcd_estimator", parent_folder="services")

TargetChoice = Union[TargetSpec, TargetKind, str, np.ndarray, None]


@dataclass(frozen=True)
class PreparedData:
    """Everything about a data set that does not depend on h."""

    X: DataMatrix
    standardization: Standardization
    target: TargetSpec
    whitened: WhitenedData
    starts: Tuple[InitialStart, ...]

    @property
    def n(self) -> int:
        return self.X.n

    @property
    def p(self) -> int:
        return self.X.p


@dataclass(frozen=True)
class SubsetSearch:
    h: int
    c_alpha: float
    rho: float
    subset: SubsetIndex
    objective: float
    core_eigenvalues: np.ndarray
    starts: Tuple[StartDiagnostics, ...]
    best_start: int
    rho_forced: bool
    rho_adjusted: bool


def _as_data_matrix(X) -> DataMatrix:
    return X if isinstance(X, DataMatrix) else DataMatrix.from_array(X)


def default_h(n: int, options: Optional[MrcdOptions] = None) -> int:
    """ceil(fraction * n), the recommended subset size when none is given."""
    options = options or MrcdOptions()
    return min(n, max((n + 1) // 2, math.ceil(options.default_h_fraction * n - 1e-9)))


def prepare(
    X,
    target: TargetChoice = None,
    options: Optional[MrcdOptions] = None,
    ogk_options: Optional[OgkOptions] = None,
) -> PreparedData:
    """Standardize, build the target, whiten and compute the six starts."""
    options = options or MrcdOptions()
    X = _as_data_matrix(X)
    standardization = standardize(X)
    target_spec = resolve_target(target, standardization.U, options)
    whitened = target_transform(standardization.U, target_spec)
    starts = compute_starts(whitened.W, options, ogk_options)
    return PreparedData(
        X=X,
        standardization=standardization,
        target=target_spec,
        whitened=whitened,
        starts=starts,
    )


def search_subset(prepared: PreparedData, h: int, options: Optional[MrcdOptions] = None) -> SubsetSearch:
    """Calibrate rho on the six initial subsets and run the C-steps from each."""
    options = options or MrcdOptions()
    W = prepared.whitened.W
    n, p = W.shape
    h = validate_h(h, n)
    c_alpha = consistency_factor(h, n, p)
    initial = [start.subset(h) for start in prepared.starts]

    if options.is_forced:
        start_rhos = [float(options.rho)] * len(initial)
    else:
        start_rhos = [
            calibrate_rho(c_alpha * subset_eigenvalues(W, subset), options.max_condition, options.rho_fallback)
            for subset in initial
        ]
    rho = max(start_rhos)

    def run(index: int):
        try:
            return concentrate(W, initial[index], rho, c_alpha, options.max_csteps)
        except SingularScatterError as e:
            logger.warning(
                "Start abandoned on a singular subset scatter",
                extra={"start": prepared.starts[index].name, "rho": rho, "error": e.error_message},
            )
            return None

    outcomes = ordered_map(run, range(len(initial)), n_jobs=options.n_jobs)
    diagnostics = []
    best = None
    for index, outcome in enumerate(outcomes):
        if outcome is None:
            continue
        diagnostics.append(StartDiagnostics(
            index=index,
            name=prepared.starts[index].name,
            rho=start_rhos[index],
            objective=outcome.objective,
            iterations=outcome.iterations,
            blended=prepared.starts[index].blended,
            subset=outcome.subset,
        ))
        if best is None or outcome.objective < outcomes[best].objective:
            best = index
    if best is None:
        raise SingularScatterError(rho=rho)

    subset = outcomes[best].subset
    scatter_eigenvalues = subset_eigenvalues(W, subset)
    eigenvalues = core_eigenvalues(scatter_eigenvalues, rho, c_alpha)
    adjusted = False
    if not options.is_forced and eigenvalues.max() > options.max_condition * (1 + 1e-9) * eigenvalues.min():
        raised = calibrate_rho(c_alpha * scatter_eigenvalues, options.max_condition, options.rho_fallback)
        logger.info(
            "Regularization raised for the final subset",
            extra={"h": h, "rho_search": rho, "rho_final": raised},
        )
        rho, adjusted = raised, True
        eigenvalues = core_eigenvalues(scatter_eigenvalues, rho, c_alpha)

    logger.debug(
        "Subset search finished",
        extra={"h": h, "rho": rho, "start_rhos": start_rhos, "best_start": prepared.starts[best].name},
    )
    return SubsetSearch(
        h=h,
        c_alpha=c_alpha,
        rho=float(rho),
        subset=subset,
        objective=objective_from_eigenvalues(eigenvalues, rho),
        core_eigenvalues=eigenvalues,
        starts=tuple(diagnostics),
        best_start=best,
        rho_forced=options.is_forced,
        rho_adjusted=adjusted,
    )


@dataclass(frozen=True)
class SubsetCore:
    """W-space pieces of a subset: K_core, the centered rows, D_W and S*."""

    rho: float
    core: np.ndarray
    centered: np.ndarray
    w_scale: np.ndarray
    s_star: np.ndarray

    @property
    def standardized(self) -> np.ndarray:
        """rho I + (1 - rho) S*, the scale-free form compared across subset sizes."""
        return self.rho * np.eye(self.s_star.shape[0]) + (1.0 - self.rho) * self.s_star


def subset_core(W: np.ndarray, subset: SubsetIndex, rho: float, c_alpha: float) -> SubsetCore:
    """K_core = rho I + (1 - rho) c_alpha S_W(H). Zero subset variances keep D_W = 1 in S*."""
    _, centered = centered_subset(W, subset)
    h, p = centered.shape
    scatter = centered.T @ centered / h
    scatter = (scatter + scatter.T) / 2.0
    w_scale = np.sqrt(np.diag(scatter))
    if np.any(w_scale <= 0):
        logger.warning(
            "Zero subset variance in whitened coordinates",
            extra={"columns": np.flatnonzero(w_scale <= 0).tolist()},
        )
        w_scale = np.where(w_scale > 0, w_scale, 1.0)
    return SubsetCore(
        rho=float(rho),
        core=rho * np.eye(p) + (1.0 - rho) * c_alpha * scatter,
        centered=centered,
        w_scale=w_scale,
        s_star=scatter / np.outer(w_scale, w_scale),
    )


def _core_inverse(core: np.ndarray, factor: np.ndarray, rho: float, c_alpha: float, method: str) -> np.ndarray:
    h, p = factor.shape
    if method == "auto":
        method = "smw" if h < p and rho > 0 else "direct"
    if method == "smw":
        if rho <= 0:
            raise SingularScatterError(rho=rho, message="Woodbury inverse needs rho > 0")
        if rho >= 1.0:
            return np.eye(p)
        c = (1.0 - rho) * c_alpha / h
        inner = np.eye(h) + (c / rho) * (factor @ factor.T)
        correction = factor.T @ linalg.solve(inner, factor, assume_a="pos")
        inverse = np.eye(p) / rho - (c / rho ** 2) * correction
    elif method == "direct":
        try:
            inverse = linalg.cho_solve(linalg.cho_factor(core, lower=True), np.eye(p))
        except linalg.LinAlgError as e:
            raise SingularScatterError(rho=rho, cause=e) from e
    else:
        raise InvalidOptionError(option="precision_method", value=method, reason="expected auto, smw or direct")
    return (inverse + inverse.T) / 2.0


def _precision_from_parts(
    target: TargetSpec,
    scale: np.ndarray,
    core: np.ndarray,
    factor: np.ndarray,
    rho: float,
    c_alpha: float,
    method: str = "auto",
) -> np.ndarray:
    A = target.inverse_sqrt_factor / scale[:, None]
    precision = A @ _core_inverse(core, factor, rho, c_alpha, method) @ A.T
    return (precision + precision.T) / 2.0


def assemble_fit(prepared: PreparedData, search: SubsetSearch) -> MrcdFit:
    """Back-transform the selected subset into data-unit location, scatter and precision."""
    standardization = prepared.standardization
    target = prepared.target
    rho = search.rho
    parts = subset_core(prepared.whitened.W, search.subset, rho, search.c_alpha)

    location = standardization.nu + standardization.D * standardization.U[search.subset.array].mean(axis=0)
    B = target.sqrt_factor * standardization.D[:, None]
    scatter = B @ parts.core @ B.T
    precision = _precision_from_parts(target, standardization.D, parts.core, parts.centered, rho, search.c_alpha)

    centered = prepared.X.values - location
    distances = np.sqrt(np.clip(np.einsum("ij,ij->i", centered @ precision, centered), 0.0, None))
    eigenvalues = search.core_eigenvalues

    return MrcdFit(
        location=location,
        scatter=(scatter + scatter.T) / 2.0,
        precision=precision,
        subset=search.subset,
        rho=rho,
        c_alpha=search.c_alpha,
        objective=search.objective,
        distances=distances,
        h=search.h,
        target=target,
        s_star=parts.s_star,
        scale_location=standardization.nu,
        scale=standardization.D,
        w_scale=parts.w_scale,
        subset_factor=parts.centered,
        core_condition_number=float(eigenvalues.max() / eigenvalues.min()),
        columns=prepared.X.columns,
        starts=search.starts,
        best_start=search.best_start,
        rho_forced=search.rho_forced,
        rho_adjusted=search.rho_adjusted,
    )


def fit(
    X,
    h: Optional[int] = None,
    target: TargetChoice = None,
    options: Optional[MrcdOptions] = None,
    ogk_options: Optional[OgkOptions] = None,
    prepared: Optional[PreparedData] = None,
) -> MrcdFit:
    """
    Minimum regularized covariance determinant fit.

    Args:
        X: DataMatrix or n×p array
        h: Subset size, n/2 <= h <= n; defaults to ceil(0.75 n)
        target: TargetSpec, a TargetKind name or an explicit matrix; identity when None
        options: Estimator tuning; ``options.rho`` forces the regularization weight
        prepared: Result of ``prepare`` to reuse across subset sizes
    """
    options = options or MrcdOptions()
    if prepared is None:
        prepared = prepare(X, target, options, ogk_options)
    h = default_h(prepared.n, options) if h is None else h
    search = search_subset(prepared, h, options)
    result = assemble_fit(prepared, search)

    logger.info(
        "MRCD fit completed",
        extra={
            "n": result.n,
            "p": result.p,
            "h": result.h,
            "rho": result.rho,
            "objective": result.objective,
            "best_start": prepared.starts[result.best_start].name,
            "target": prepared.target.kind.value,
        },
    )
    return result


def precision(fit_result: MrcdFit, method: str = "auto") -> np.ndarray:
    """
    Inverse of the fitted scatter.

    ``method`` is "smw" (Woodbury, h×h solve), "direct" (Cholesky of the p×p
    core) or "auto", which takes the Woodbury route when h < p.
    """
    return _precision_from_parts(
        fit_result.target,
        fit_result.scale,
        fit_result.regularized_core,
        fit_result.subset_factor,
        fit_result.rho,
        fit_result.c_alpha,
        method,
    )


def robust_distances(fit_result: MrcdFit, X) -> np.ndarray:
    """sqrt((x_i - m)' K^{-1} (x_i - m)) for every row of X."""
    values = X.values if isinstance(X, DataMatrix) else np.atleast_2d(np.asarray(X, dtype=float))
    if values.shape[1] != fit_result.p:
        raise DimensionMismatchError(expected=fit_result.p, actual=values.shape[1], what="columns of X")
    centered = values - fit_result.location
    squared = np.einsum("ij,ij->i", centered @ fit_result.precision, centered)
    return np.sqrt(np.clip(squared, 0.0, None))


def scan_h(
    X,
    h_range: Iterable[int],
    target: TargetChoice = None,
    options: Optional[MrcdOptions] = None,
    ogk_options: Optional[OgkOptions] = None,
    prepared: Optional[PreparedData] = None,
) -> List[HScanRow]:
    """
    Objective and ||M_h - M_{h-1}||_F over a range of subset sizes.

    The starts are computed once; the gap is None where h - 1 is not in the range.
    """
    options = options or MrcdOptions()
    h_values = sorted(set(int(h) for h in h_range))
    if not h_values:
        raise InvalidSubsetSizeError(message="empty h range")
    if prepared is None:
        prepared = prepare(X, target, options, ogk_options)
    for h in h_values:
        validate_h(h, prepared.n)

    inner_options = dataclasses.replace(options, n_jobs=1)
    W = prepared.whitened.W

    def evaluate(h: int):
        search = search_subset(prepared, h, inner_options)
        return search, subset_core(W, search.subset, search.rho, search.c_alpha).standardized

    results = ordered_map(evaluate, h_values, n_jobs=options.n_jobs)
    rows = []
    for position, (h, (search, core)) in enumerate(zip(h_values, results)):
        gap = None
        if position > 0 and h_values[position - 1] == h - 1:
            gap = float(np.linalg.norm(core - results[position - 1][1], ord="fro"))
        rows.append(HScanRow(h=h, objective=search.objective, frobenius_gap=gap, rho=search.rho))

    logger.info(
        "h scan completed",
        extra={"h_min": h_values[0], "h_max": h_values[-1], "rows": len(rows)},
    )
    return rows
