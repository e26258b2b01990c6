from dataclasses import dataclass
from typing import Optional, Union

from mrcdkit.core.exceptions import InvalidOptionError
from mrcdkit.domain.models.enums import CutoffMethod
from mrcdkit.utils.handlers.configuration_handler import ConfigurationHandler


@dataclass
class MrcdOptions:
    """
    Tuning of the MRCD fit.

    Defaults equal the shipped INI values, so the estimator runs without a
    configuration file. ``rho`` forces a fixed regularization weight and
    skips calibration entirely; ``rho=0`` yields the plain MCD estimator.
    """

    # --------------------------------------------------------------
    # REGULARIZATION
    # --------------------------------------------------------------
    max_condition: float = 1000.0
    rho_fallback: float = 0.1
    rho: Optional[float] = None

    # --------------------------------------------------------------
    # SUBSET SEARCH
    # --------------------------------------------------------------
    default_h_fraction: float = 0.75
    max_csteps: int = 200
    n_jobs: int = 1

    # --------------------------------------------------------------
    # EQUICORRELATION TARGET
    # --------------------------------------------------------------
    equicorrelation_c_max: float = 0.99
    equicorrelation_offset: float = 0.1

    # --------------------------------------------------------------
    # OUTLIER FLAGGING
    # --------------------------------------------------------------
    cutoff_method: Union[CutoffMethod, str] = CutoffMethod.CHISQ
    cutoff_quantile: float = 0.975

    def __post_init__(self):
        if not self.max_condition > 1:
            raise InvalidOptionError(option="max_condition", value=self.max_condition, reason="must exceed 1")
        if not 0 < self.rho_fallback < 1:
            raise InvalidOptionError(option="rho_fallback", value=self.rho_fallback, reason="must lie in (0, 1)")
        if self.rho is not None and not 0 <= self.rho <= 1:
            raise InvalidOptionError(option="rho", value=self.rho, reason="must lie in [0, 1]")
        if not 0.5 <= self.default_h_fraction <= 1:
            raise InvalidOptionError(option="default_h_fraction", value=self.default_h_fraction, reason="must lie in [0.5, 1]")
        for name in ("max_csteps", "n_jobs"):
            value = getattr(self, name)
            if int(value) < 1:
                raise InvalidOptionError(option=name, value=value, reason="must be a positive integer")
            setattr(self, name, int(value))
        if not 0 < self.equicorrelation_c_max < 1:
            raise InvalidOptionError(option="equicorrelation_c_max", value=self.equicorrelation_c_max, reason="must lie in (0, 1)")
        if not 0 <= self.cutoff_quantile < 1:
            raise InvalidOptionError(option="cutoff_quantile", value=self.cutoff_quantile, reason="must lie in [0, 1)")
        try:
            self.cutoff_method = CutoffMethod(self.cutoff_method)
        except ValueError as e:
            raise InvalidOptionError(option="cutoff_method", value=self.cutoff_method, cause=e) from e

    @classmethod
    def from_config(cls, **overrides) -> "MrcdOptions":
        ConfigurationHandler.ensure_loaded()
        values = dict(
            max_condition=ConfigurationHandler.get_value_as_float("Estimator", "max_condition", fallback=1000.0),
            rho_fallback=ConfigurationHandler.get_value_as_float("Estimator", "rho_fallback", fallback=0.1),
            default_h_fraction=ConfigurationHandler.get_value_as_float("Estimator", "default_h_fraction", fallback=0.75),
            max_csteps=ConfigurationHandler.get_value_as_int("Estimator", "max_csteps", fallback=200),
            n_jobs=ConfigurationHandler.get_value_as_int("Estimator", "n_jobs", fallback=1),
            equicorrelation_c_max=ConfigurationHandler.get_value_as_float("Estimator", "equicorrelation_c_max", fallback=0.99),
            equicorrelation_offset=ConfigurationHandler.get_value_as_float("Estimator", "equicorrelation_offset", fallback=0.1),
            cutoff_method=ConfigurationHandler.get_value_as_str("Outliers", "cutoff_method", fallback="chisq"),
            cutoff_quantile=ConfigurationHandler.get_value_as_float("Outliers", "cutoff_quantile", fallback=0.975),
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    @property
    def is_forced(self) -> bool:
        return self.rho is not None


@dataclass
class OgkOptions:
    """Biweight tuning and work partitioning of the OGK estimator."""

    location_tuning: float = 4.685
    scale_tuning: float = 1.5476
    variance_floor: float = 1e-6
    pair_batch_size: int = 64
    n_jobs: int = 1

    def __post_init__(self):
        for name in ("location_tuning", "scale_tuning", "variance_floor"):
            value = getattr(self, name)
            if not value > 0:
                raise InvalidOptionError(option=name, value=value, reason="must be positive")
        for name in ("pair_batch_size", "n_jobs"):
            value = getattr(self, name)
            if int(value) < 1:
                raise InvalidOptionError(option=name, value=value, reason="must be a positive integer")
            setattr(self, name, int(value))

    @classmethod
    def from_config(cls, **overrides) -> "OgkOptions":
        ConfigurationHandler.ensure_loaded()
        values = dict(
            location_tuning=ConfigurationHandler.get_value_as_float("Ogk", "location_tuning", fallback=4.685),
            scale_tuning=ConfigurationHandler.get_value_as_float("Ogk", "scale_tuning", fallback=1.5476),
            variance_floor=ConfigurationHandler.get_value_as_float("Ogk", "variance_floor", fallback=1e-6),
            pair_batch_size=ConfigurationHandler.get_value_as_int("Ogk", "pair_batch_size", fallback=64),
            n_jobs=ConfigurationHandler.get_value_as_int("Ogk", "n_jobs", fallback=1),
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass
class AlyzOptions:
    """Target condition number and acceptance band of the random correlation generator."""

    condition: float = 100.0
    band_lower: float = 90.0
    band_upper: float = 110.0
    max_iter: int = 200

    def __post_init__(self):
        if not 1 <= self.band_lower <= self.condition <= self.band_upper:
            raise InvalidOptionError(
                option="alyz_condition",
                value=(self.band_lower, self.condition, self.band_upper),
                reason="need 1 <= band_lower <= condition <= band_upper",
            )
        if int(self.max_iter) < 1:
            raise InvalidOptionError(option="alyz_max_iter", value=self.max_iter, reason="must be a positive integer")
        self.max_iter = int(self.max_iter)

    @classmethod
    def from_config(cls, **overrides) -> "AlyzOptions":
        ConfigurationHandler.ensure_loaded()
        values = dict(
            condition=ConfigurationHandler.get_value_as_float("Simulation", "alyz_condition", fallback=100.0),
            band_lower=ConfigurationHandler.get_value_as_float("Simulation", "alyz_band_lower", fallback=90.0),
            band_upper=ConfigurationHandler.get_value_as_float("Simulation", "alyz_band_upper", fallback=110.0),
            max_iter=ConfigurationHandler.get_value_as_int("Simulation", "alyz_max_iter", fallback=200),
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass
class OutputOptions:
    sidecar_threshold: int = 200

    def __post_init__(self):
        if int(self.sidecar_threshold) < 1:
            raise InvalidOptionError(option="sidecar_threshold", value=self.sidecar_threshold, reason="must be a positive integer")
        self.sidecar_threshold = int(self.sidecar_threshold)

    @classmethod
    def from_config(cls) -> "OutputOptions":
        ConfigurationHandler.ensure_loaded()
        return cls(sidecar_threshold=ConfigurationHandler.get_value_as_int("Output", "sidecar_threshold", fallback=200))
