from enum import Enum


class TargetKind(str, Enum):
    IDENTITY = "identity"
    EQUICORRELATION = "equicorrelation"
    RANK = "rank"
    CUSTOM = "custom"


class CutoffMethod(str, Enum):
    CHISQ = "chisq"
    EMPIRICAL = "empirical"


class EstimatorKind(str, Enum):
    MRCD = "mrcd"
    MCD = "mcd"
    OGK = "ogk"


class DataGeneratingProcess(str, Enum):
    ALYZ = "alyz"
    FACTOR = "factor"
