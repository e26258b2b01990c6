from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from mrcdkit.core.exceptions import DataFormatError, DimensionMismatchError


@dataclass(frozen=True)
class DataMatrix:
    """
    n×p observation matrix; rows are observations.

    Values are stored as a read-only float64 copy. ``row_labels`` carries
    optional observation names (e.g. states) for reporting only.
    """

    values: np.ndarray
    columns: Tuple[str, ...] = ()
    row_labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        values = np.array(self.values, dtype=float, copy=True)
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        if values.ndim != 2:
            raise DimensionMismatchError(expected="2-D array", actual=f"{values.ndim}-D array", what="data matrix")
        if values.shape[0] == 0 or values.shape[1] == 0:
            raise DataFormatError(reason=f"empty data matrix of shape {values.shape}")
        if not np.all(np.isfinite(values)):
            bad = np.where(~np.all(np.isfinite(values), axis=0))[0]
            raise DataFormatError(reason="missing or non-finite values", columns=[str(j) for j in bad])
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

        columns = tuple(str(c) for c in self.columns) if self.columns else tuple(f"x{j + 1}" for j in range(values.shape[1]))
        if len(columns) != values.shape[1]:
            raise DimensionMismatchError(expected=values.shape[1], actual=len(columns), what="column names")
        object.__setattr__(self, "columns", columns)

        if self.row_labels is not None:
            labels = tuple(str(label) for label in self.row_labels)
            if len(labels) != values.shape[0]:
                raise DimensionMismatchError(expected=values.shape[0], actual=len(labels), what="row labels")
            object.__setattr__(self, "row_labels", labels)

    @classmethod
    def from_array(
        cls,
        values,
        columns: Optional[Sequence[str]] = None,
        row_labels: Optional[Sequence[str]] = None,
    ) -> DataMatrix:
        return cls(
            values=np.asarray(values, dtype=float),
            columns=tuple(columns) if columns is not None else (),
            row_labels=tuple(row_labels) if row_labels is not None else None,
        )

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]

    def column_index(self, name: str) -> int:
        try:
            return self.columns.index(name)
        except ValueError as e:
            raise DataFormatError(reason=f"unknown column '{name}'", columns=[name], cause=e) from e

    def label_of(self, row: int) -> str:
        """Row label, or the 1-based row number when no labels are attached."""
        return self.row_labels[row] if self.row_labels is not None else str(row + 1)

    def with_values(self, values: np.ndarray) -> DataMatrix:
        """Same columns and labels, new values of identical shape."""
        values = np.asarray(values, dtype=float)
        if values.shape != self.values.shape:
            raise DimensionMismatchError(expected=self.values.shape, actual=values.shape, what="replacement values")
        return DataMatrix(values=values, columns=self.columns, row_labels=self.row_labels)

    def select_columns(self, indices: Sequence[int]) -> DataMatrix:
        indices = list(indices)
        return DataMatrix(
            values=self.values[:, indices],
            columns=tuple(self.columns[j] for j in indices),
            row_labels=self.row_labels,
        )
