from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple

import numpy as np

from mrcdkit.core.exceptions import InvalidSubsetSizeError
from mrcdkit.domain.models.target import TargetSpec


def _frozen(array) -> np.ndarray:
    array = np.array(array, dtype=float, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class SubsetIndex:
    """
    An h-subset of observations, stored as sorted distinct 0-based row indices.

    Reports convert to 1-based numbering with ``one_based()``.
    """

    indices: Tuple[int, ...]

    def __post_init__(self):
        indices = tuple(sorted(int(i) for i in self.indices))
        if len(set(indices)) != len(indices):
            raise InvalidSubsetSizeError(message="subset indices must be distinct")
        if not indices:
            raise InvalidSubsetSizeError(h=0, message="empty subset")
        object.__setattr__(self, "indices", indices)

    @classmethod
    def from_iterable(cls, indices: Iterable[int]) -> SubsetIndex:
        return cls(tuple(int(i) for i in indices))

    @property
    def h(self) -> int:
        return len(self.indices)

    @property
    def array(self) -> np.ndarray:
        return np.fromiter(self.indices, dtype=np.intp, count=len(self.indices))

    def one_based(self) -> Tuple[int, ...]:
        return tuple(i + 1 for i in self.indices)

    def complement(self, n: int) -> Tuple[int, ...]:
        members = set(self.indices)
        return tuple(i for i in range(n) if i not in members)

    def overlap(self, other: SubsetIndex) -> float:
        """Fraction of this subset's members shared with ``other``."""
        return len(set(self.indices) & set(other.indices)) / self.h


@dataclass(frozen=True)
class RegularizedScatter:
    """W-space core ρI + (1-ρ)c_α S_W(H) of the regularized subset scatter."""

    rho: float
    c_alpha: float
    scatter: np.ndarray
    core: np.ndarray
    eigenvalues: np.ndarray

    def __post_init__(self):
        for name in ("scatter", "core", "eigenvalues"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues.min())

    @property
    def condition_number(self) -> float:
        smallest = self.min_eigenvalue
        return float("inf") if smallest <= 0 else float(self.eigenvalues.max() / smallest)


@dataclass(frozen=True)
class StartDiagnostics:
    """Outcome of the C-step search launched from one of the deterministic starts."""

    index: int
    name: str
    rho: float
    objective: float
    iterations: int
    blended: bool
    subset: SubsetIndex


@dataclass(frozen=True)
class MrcdFit:
    """
    Fitted MRCD location and scatter.

    ``location``, ``scatter`` and ``precision`` are in data units. ``scale_location``
    and ``scale`` are the median/Qn standardization (ν, D); ``subset_factor``
    holds the centered W-space rows of the final subset, which the Woodbury
    form of the precision matrix needs.
    """

    location: np.ndarray
    scatter: np.ndarray
    precision: np.ndarray
    subset: SubsetIndex
    rho: float
    c_alpha: float
    objective: float
    distances: np.ndarray
    h: int
    target: TargetSpec
    s_star: np.ndarray
    scale_location: np.ndarray
    scale: np.ndarray
    w_scale: np.ndarray
    subset_factor: np.ndarray
    core_condition_number: float
    columns: Tuple[str, ...] = ()
    starts: Tuple[StartDiagnostics, ...] = ()
    best_start: int = 0
    rho_forced: bool = False
    rho_adjusted: bool = False

    def __post_init__(self):
        for name in (
            "location", "scatter", "precision", "distances", "s_star",
            "scale_location", "scale", "w_scale", "subset_factor",
        ):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    @property
    def n(self) -> int:
        return self.distances.shape[0]

    @property
    def p(self) -> int:
        return self.location.shape[0]

    @property
    def regularized_core(self) -> np.ndarray:
        """K_core = ρI + (1-ρ)c_α D_W S* D_W, the W-space MRCD scatter."""
        s_w = self.s_star * np.outer(self.w_scale, self.w_scale)
        return self.rho * np.eye(self.p) + (1.0 - self.rho) * self.c_alpha * s_w

    @property
    def condition_number(self) -> float:
        eigenvalues = np.linalg.eigvalsh(self.scatter)
        return float(eigenvalues.max() / eigenvalues.min())


@dataclass(frozen=True)
class OgkFit:
    location: np.ndarray
    scatter: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "location", _frozen(self.location))
        object.__setattr__(self, "scatter", _frozen(self.scatter))

    @property
    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.scatter).min())


@dataclass(frozen=True)
class RobustRegressionFit:
    """Plug-in regression read off the partitioned MRCD scatter of [X | y]."""

    slopes: np.ndarray
    intercept: float
    subset: SubsetIndex
    ols_slopes: np.ndarray
    ols_intercept: float
    excluded_rows: Tuple[int, ...]
    predictors: Tuple[str, ...]
    response: str
    fit: Optional[MrcdFit] = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "slopes", _frozen(self.slopes))
        object.__setattr__(self, "ols_slopes", _frozen(self.ols_slopes))

    def slope_of(self, predictor: str) -> float:
        return float(self.slopes[self.predictors.index(predictor)])

    def ols_slope_of(self, predictor: str) -> float:
        return float(self.ols_slopes[self.predictors.index(predictor)])


@dataclass(frozen=True)
class HScanRow:
    h: int
    objective: float
    frobenius_gap: Optional[float]
    rho: float
