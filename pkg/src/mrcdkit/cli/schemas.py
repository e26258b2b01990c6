"""
JSON report schemas for the command-line surface.

Floats are serialized in their shortest round-trip form, so a report that
is loaded and dumped again is byte-identical. Observation indices are
1-based throughout.
"""
from typing import Dict, List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from mrcdkit import __version__
from mrcdkit.domain.models import DataMatrix, MrcdFit, OgkFit, RobustRegressionFit


def _matrix(values: np.ndarray) -> List[List[float]]:
    return [[float(x) for x in row] for row in np.asarray(values)]


def _vector(values: np.ndarray) -> List[float]:
    return [float(x) for x in np.asarray(values)]


class ReportBase(BaseModel):
    model_config = ConfigDict(extra="forbid")

    version: str = __version__
    command: str
    seed: Optional[int] = None
    input: str
    timing_seconds: float = Field(0.0, ge=0)


# ============================================================================
# FIT
# ============================================================================

class TargetReport(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: str
    parameter: Optional[float] = None
    condition_number: float


class StartReport(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    rho: float
    index: int
    objective: float
    iterations: int
    blended: bool


class FitReport(ReportBase):
    """MRCD fit: estimates, subset, distances and outlier flags."""

    command: str = "fit"
    n: int
    p: int
    columns: List[str]
    target: TargetReport
    h: int
    rho: float
    rho_forced: bool
    rho_adjusted: bool
    c_alpha: float
    objective: float
    condition_number: float
    core_condition_number: float
    location: List[float]
    scatter: Optional[List[List[float]]] = None
    precision: Optional[List[List[float]]] = None
    scatter_file: Optional[str] = None
    precision_file: Optional[str] = None
    subset: List[int]
    distances: List[float]
    cutoff: float
    cutoff_method: str
    flagged: List[int]
    flagged_labels: Optional[List[str]] = None
    starts: List[StartReport]
    best_start: str

    @classmethod
    def from_fit(
        cls,
        result: MrcdFit,
        data: DataMatrix,
        *,
        input: str,
        cutoff: float,
        cutoff_method: str,
        flagged,
        inline_matrices: bool = True,
        **kwargs,
    ) -> "FitReport":
        flagged = [int(i) for i in flagged]
        return cls(
            input=input,
            n=result.n,
            p=result.p,
            columns=list(result.columns),
            target=TargetReport(
                kind=result.target.kind.value,
                parameter=result.target.parameter,
                condition_number=result.target.condition_number,
            ),
            h=result.h,
            rho=result.rho,
            rho_forced=result.rho_forced,
            rho_adjusted=result.rho_adjusted,
            c_alpha=result.c_alpha,
            objective=result.objective,
            condition_number=result.condition_number,
            core_condition_number=result.core_condition_number,
            location=_vector(result.location),
            scatter=_matrix(result.scatter) if inline_matrices else None,
            precision=_matrix(result.precision) if inline_matrices else None,
            subset=list(result.subset.one_based()),
            distances=_vector(result.distances),
            cutoff=cutoff,
            cutoff_method=cutoff_method,
            flagged=[i + 1 for i in flagged],
            flagged_labels=[data.label_of(i) for i in flagged] if data.row_labels is not None else None,
            starts=[
                StartReport(
                    name=start.name,
                    index=start.index,
                    rho=start.rho,
                    objective=start.objective,
                    iterations=start.iterations,
                    blended=start.blended,
                )
                for start in result.starts
            ],
            best_start=next(s.name for s in result.starts if s.index == result.best_start),
            **kwargs,
        )


# ============================================================================
# OGK
# ============================================================================

class OgkReport(ReportBase):
    command: str = "ogk"
    n: int
    p: int
    columns: List[str]
    location: List[float]
    scatter: Optional[List[List[float]]] = None
    scatter_file: Optional[str] = None
    min_eigenvalue: float

    @classmethod
    def from_fit(cls, result: OgkFit, data: DataMatrix, *, input: str, inline_matrices: bool = True, **kwargs) -> "OgkReport":
        return cls(
            input=input,
            n=data.n,
            p=data.p,
            columns=list(data.columns),
            location=_vector(result.location),
            scatter=_matrix(result.scatter) if inline_matrices else None,
            min_eigenvalue=result.min_eigenvalue,
            **kwargs,
        )


# ============================================================================
# REGRESSION
# ============================================================================

class RegressionReport(ReportBase):
    """Robust slopes next to least squares, with the rows left out of the subset."""

    command: str = "regress"
    n: int
    response: str
    predictors: List[str]
    h: int
    rho: float
    intercept: float
    slopes: Dict[str, float]
    ols_intercept: float
    ols_slopes: Dict[str, float]
    subset: List[int]
    excluded: List[int]
    excluded_labels: Optional[List[str]] = None

    @classmethod
    def from_fit(cls, result: RobustRegressionFit, data: DataMatrix, *, input: str, **kwargs) -> "RegressionReport":
        return cls(
            input=input,
            n=data.n,
            response=result.response,
            predictors=list(result.predictors),
            h=result.subset.h,
            rho=result.fit.rho if result.fit is not None else 0.0,
            intercept=result.intercept,
            slopes={name: float(b) for name, b in zip(result.predictors, result.slopes)},
            ols_intercept=result.ols_intercept,
            ols_slopes={name: float(b) for name, b in zip(result.predictors, result.ols_slopes)},
            subset=list(result.subset.one_based()),
            excluded=[i + 1 for i in result.excluded_rows],
            excluded_labels=[data.label_of(i) for i in result.excluded_rows] if data.row_labels is not None else None,
            **kwargs,
        )
