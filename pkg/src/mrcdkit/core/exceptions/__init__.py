"""
MRCDKit Exception Classes
=========================

All exceptions inherit from MrcdkitException. The exit_code attribute
is the process exit status used by the command line interface.
"""

from .base import MrcdkitException
from .error_levels import ErrorDetailLevel, get_error_level_from_env
from .application import (
    ApplicationException,
    EnvironmentTypeConversionError,
    ConfigurationError,
    ConfigurationDirectoryNotFoundError,
    ConfigurationFileNotFoundError,
    ConfigurationInvalidAppEnvError,
    ConfigurationTestFailedError,
    ConfigurationNotInitializedError,
    ConfigurationTypeConversionError,
    InvalidOptionError,
)
from .data import (
    DataException,
    DataFileNotFoundError,
    DataFormatError,
    EmptySampleError,
    DimensionMismatchError,
)
from .estimation import (
    EstimationException,
    DegenerateVariableError,
    InvalidSubsetSizeError,
    TargetValidationError,
    SingularScatterError,
)
from .simulation import (
    SimulationException,
    SimulationConfigError,
    ConditionBandError,
    FactorModelError,
)

__all__ = [
    # Base
    "MrcdkitException",
    "ErrorDetailLevel",
    "get_error_level_from_env",
    # Application
    "ApplicationException",
    "EnvironmentTypeConversionError",
    "ConfigurationError",
    "ConfigurationDirectoryNotFoundError",
    "ConfigurationFileNotFoundError",
    "ConfigurationInvalidAppEnvError",
    "ConfigurationTestFailedError",
    "ConfigurationNotInitializedError",
    "ConfigurationTypeConversionError",
    "InvalidOptionError",
    # Data
    "DataException",
    "DataFileNotFoundError",
    "DataFormatError",
    "EmptySampleError",
    "DimensionMismatchError",
    # Estimation
    "EstimationException",
    "DegenerateVariableError",
    "InvalidSubsetSizeError",
    "TargetValidationError",
    "SingularScatterError",
    # Simulation
    "SimulationException",
    "SimulationConfigError",
    "ConditionBandError",
    "FactorModelError",
]
