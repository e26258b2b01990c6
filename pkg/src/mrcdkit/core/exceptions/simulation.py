"""
Errors of the Monte Carlo harness and its config loader.
"""

from typing import Any, Dict, List, Optional, Tuple

from .base import MrcdkitException


class SimulationException(MrcdkitException):
    error_code = "SIMULATION_ERROR"
    error_message = "Simulation failed"


class SimulationConfigError(SimulationException):
    """A simulation config file violates the schema; every offending key is listed."""

    exit_code = 5
    error_code = "SIMULATION_CONFIG_ERROR"
    error_message = "Invalid simulation configuration"

    def __init__(
        self,
        offending_keys: Optional[List[str]] = None,
        problems: Optional[List[str]] = None,
        file_path: Optional[str] = None,
        **kwargs: Any,
    ):
        super().__init__(
            offending_keys=list(offending_keys or []),
            problems=list(problems) if problems else None,
            file_path=file_path,
            **kwargs,
        )

    def describe(self, details: Dict[str, Any]) -> Optional[str]:
        keys = ", ".join(details["offending_keys"]) or "<unknown>"
        return f"Invalid simulation configuration; offending keys: {keys}"


class ConditionBandError(SimulationException):
    error_code = "CONDITION_BAND_ERROR"
    error_message = "Correlation matrix did not reach the condition band"

    def __init__(
        self,
        p: Optional[int] = None,
        achieved: Optional[float] = None,
        band: Optional[Tuple[float, float]] = None,
        iterations: Optional[int] = None,
        **kwargs: Any,
    ):
        super().__init__(p=p, achieved=achieved, band=list(band) if band else None, iterations=iterations, **kwargs)

    def describe(self, details: Dict[str, Any]) -> Optional[str]:
        return (
            f"Condition number {details.get('achieved')} outside band {details.get('band')} "
            f"after {details.get('iterations')} iterations (p={details.get('p')})"
        )


class FactorModelError(SimulationException):
    exit_code = 5
    error_code = "FACTOR_MODEL_ERROR"
    error_message = "Invalid factor model parameters"

    def __init__(self, parameter: Optional[str] = None, reason: Optional[str] = None, **kwargs: Any):
        super().__init__(parameter=parameter, reason=reason, **kwargs)

    def describe(self, details: Dict[str, Any]) -> Optional[str]:
        if "parameter" not in details:
            return None
        return f"Invalid factor model parameter '{details['parameter']}': {details.get('reason')}"
