from .enums import TargetKind, CutoffMethod, EstimatorKind, DataGeneratingProcess
from .data_matrix import DataMatrix
from .target import TargetSpec
from .fits import (
    SubsetIndex,
    RegularizedScatter,
    StartDiagnostics,
    MrcdFit,
    OgkFit,
    RobustRegressionFit,
    HScanRow,
)
from .options import MrcdOptions, OgkOptions, AlyzOptions, OutputOptions
from .simulation import FactorModelParams, SimConfig, ReplicationRecord, SimCell, SimResult

__all__ = [
    "TargetKind",
    "CutoffMethod",
    "EstimatorKind",
    "DataGeneratingProcess",
    "DataMatrix",
    "TargetSpec",
    "SubsetIndex",
    "RegularizedScatter",
    "StartDiagnostics",
    "MrcdFit",
    "OgkFit",
    "RobustRegressionFit",
    "HScanRow",
    "MrcdOptions",
    "OgkOptions",
    "AlyzOptions",
    "OutputOptions",
    "FactorModelParams",
    "SimConfig",
    "ReplicationRecord",
    "SimCell",
    "SimResult",
]
