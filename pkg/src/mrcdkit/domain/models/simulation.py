"""
Monte Carlo experiment schemas and results.
"""
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from pydantic import AliasChoices, BaseModel, ConfigDict, Field, field_validator, model_validator

from mrcdkit.domain.models.enums import DataGeneratingProcess, EstimatorKind, TargetKind
from mrcdkit.utils.handlers.configuration_handler import ConfigurationHandler


def _split_list(value):
    """Accept comma-separated INI strings wherever a list is expected."""
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


# ============================================================================
# CONFIGURATION SCHEMAS
# ============================================================================

class FactorModelParams(BaseModel):
    """Three-factor data-generating process x = B f + e."""
    model_config = ConfigDict(extra="forbid", frozen=True)

    factor_mean: List[float] = Field(default=[0.0, 0.0, 0.0], min_length=3, max_length=3)
    factor_cov: List[float] = Field(
        default=[1.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.25],
        min_length=9, max_length=9, description="Row-major 3x3 factor covariance",
    )
    loading_mean: List[float] = Field(default=[0.8, 0.5, 0.4], min_length=3, max_length=3)
    loading_cov: List[float] = Field(
        default=[0.03, 0.0, 0.0, 0.0, 0.05, 0.0, 0.0, 0.0, 0.08],
        min_length=9, max_length=9, description="Row-major 3x3 covariance of a loading row",
    )
    error_sd_shape: float = Field(default=3.36, gt=0)
    error_sd_scale: float = Field(default=0.19, ge=0)
    error_sd_floor: float = Field(default=0.2, ge=0)

    @field_validator("factor_mean", "factor_cov", "loading_mean", "loading_cov", mode="before")
    @classmethod
    def parse_lists(cls, v):
        return _split_list(v)

    @classmethod
    def from_config(cls) -> "FactorModelParams":
        ConfigurationHandler.ensure_loaded()
        defaults = cls()
        return cls(
            factor_mean=ConfigurationHandler.get_value_as_float_list("FactorModel", "factor_mean", fallback=defaults.factor_mean),
            factor_cov=ConfigurationHandler.get_value_as_float_list("FactorModel", "factor_cov", fallback=defaults.factor_cov),
            loading_mean=ConfigurationHandler.get_value_as_float_list("FactorModel", "loading_mean", fallback=defaults.loading_mean),
            loading_cov=ConfigurationHandler.get_value_as_float_list("FactorModel", "loading_cov", fallback=defaults.loading_cov),
            error_sd_shape=ConfigurationHandler.get_value_as_float("FactorModel", "error_sd_shape", fallback=defaults.error_sd_shape),
            error_sd_scale=ConfigurationHandler.get_value_as_float("FactorModel", "error_sd_scale", fallback=defaults.error_sd_scale),
            error_sd_floor=ConfigurationHandler.get_value_as_float("FactorModel", "error_sd_floor", fallback=defaults.error_sd_floor),
        )


class SimConfig(BaseModel):
    """
    One simulation panel: a data-generating process, a contamination
    setting and the estimators compared on it.

    ``replications`` is also accepted under the key ``m``.
    """
    model_config = ConfigDict(extra="forbid", frozen=True, populate_by_name=True)

    panel: str = Field(default="", description="Free-form panel label copied into every result row")
    dgp: DataGeneratingProcess = DataGeneratingProcess.ALYZ
    n: int = Field(..., ge=2)
    p: int = Field(..., ge=1)
    epsilon: float = Field(default=0.0, ge=0.0, lt=0.5)
    k: float = Field(default=50.0, ge=0)
    h_fractions: List[float] = Field(default=[0.5, 0.75, 0.9, 1.0], min_length=1)
    replications: int = Field(default=1, ge=1, validation_alias=AliasChoices("replications", "m"))
    seed: int = Field(default=0, ge=0)
    estimators: List[EstimatorKind] = Field(
        default=[EstimatorKind.MRCD, EstimatorKind.MCD, EstimatorKind.OGK], min_length=1
    )
    target: TargetKind = TargetKind.EQUICORRELATION
    condition: float = Field(default=100.0, gt=1)
    n_jobs: int = Field(default=1, ge=1)
    factor: Optional[FactorModelParams] = None

    @field_validator("h_fractions", "estimators", mode="before")
    @classmethod
    def parse_lists(cls, v):
        return _split_list(v)

    @field_validator("h_fractions")
    @classmethod
    def validate_h_fractions(cls, v: List[float]) -> List[float]:
        for fraction in v:
            if not 0.5 <= fraction <= 1.0:
                raise ValueError(f"h fraction {fraction} outside [0.5, 1]")
        return sorted(set(v))

    @field_validator("estimators")
    @classmethod
    def deduplicate_estimators(cls, v: List[EstimatorKind]) -> List[EstimatorKind]:
        return list(dict.fromkeys(v))

    @field_validator("target")
    @classmethod
    def validate_target(cls, v: TargetKind) -> TargetKind:
        if v not in (TargetKind.IDENTITY, TargetKind.EQUICORRELATION):
            raise ValueError("simulation target must be identity or equicorrelation")
        return v

    @model_validator(mode="after")
    def validate_dgp(self) -> "SimConfig":
        if self.dgp == DataGeneratingProcess.ALYZ and self.p < 2:
            raise ValueError("the ALYZ generator needs p >= 2")
        if self.epsilon > 0 and self.k <= 0:
            raise ValueError("outlier distance k must be positive when epsilon > 0")
        return self

    def h_for(self, fraction: float) -> int:
        return min(self.n, max(1, math.ceil(fraction * self.n - 1e-9)))


# ============================================================================
# RESULTS
# ============================================================================

@dataclass(frozen=True)
class ReplicationRecord:
    """Outcome of one estimator at one h on one replication."""
    replication: int
    estimator: EstimatorKind
    h_fraction: Optional[float]
    h: Optional[int]
    squared_error: Optional[float]
    rho: Optional[float]
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class SimCell:
    """Aggregated MSE and average ρ for one estimator and subset size."""
    panel: str
    estimator: EstimatorKind
    h_fraction: Optional[float]
    h: Optional[int]
    mse: Optional[float]
    avg_rho: Optional[float]
    replications: int
    failures: int


@dataclass(frozen=True)
class SimResult:
    config: SimConfig
    cells: Tuple[SimCell, ...]
    records: Tuple[ReplicationRecord, ...] = field(repr=False)
    version: str = ""

    def cell(self, estimator: EstimatorKind, h_fraction: Optional[float] = None) -> SimCell:
        for cell in self.cells:
            if cell.estimator == estimator and cell.h_fraction == h_fraction:
                return cell
        raise KeyError((estimator, h_fraction))

    @property
    def failures(self) -> Tuple[ReplicationRecord, ...]:
        return tuple(record for record in self.records if not record.ok)
