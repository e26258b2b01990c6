from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from mrcdkit.domain.models.enums import TargetKind


@dataclass(frozen=True)
class TargetSpec:
    """
    Target matrix T with its cached eigendecomposition T = Q diag(Λ) Q'.

    Instances come from the constructors in ``target_models``; those
    guarantee symmetry, positive definiteness and the condition bound.
    ``parameter`` holds the equicorrelation coefficient c when relevant.
    """

    kind: TargetKind
    matrix: np.ndarray
    eigenvectors: np.ndarray
    eigenvalues: np.ndarray
    parameter: Optional[float] = None

    def __post_init__(self):
        for name in ("matrix", "eigenvectors", "eigenvalues"):
            array = np.array(getattr(self, name), dtype=float, copy=True)
            array.setflags(write=False)
            object.__setattr__(self, name, array)

    @property
    def p(self) -> int:
        return self.matrix.shape[0]

    @property
    def is_identity(self) -> bool:
        return self.kind == TargetKind.IDENTITY

    @property
    def condition_number(self) -> float:
        return float(self.eigenvalues.max() / self.eigenvalues.min())

    @property
    def sqrt_factor(self) -> np.ndarray:
        """Q Λ^{1/2}, so that T = F F'."""
        return self.eigenvectors * np.sqrt(self.eigenvalues)

    @property
    def inverse_sqrt_factor(self) -> np.ndarray:
        """Q Λ^{-1/2}, the whitening map applied on the right of U."""
        return self.eigenvectors / np.sqrt(self.eigenvalues)
