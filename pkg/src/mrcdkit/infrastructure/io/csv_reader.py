"""
CSV ingestion.

Data files: header row, comma separated, UTF-8, '.' decimal, one observation
per row. Every cell outside the optional label column must parse as a finite
number; nothing is coerced or dropped silently.
"""
from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd

from mrcdkit.core.exceptions import DataFileNotFoundError, DataFormatError
from mrcdkit.core.mrcd_logger import get_logger
from mrcdkit.domain.models import DataMatrix

logger = get_logger("csv_reader", parent_folder="io")

PathLike = Union[str, Path]


def _read_frame(path: Path, header: Optional[int]) -> pd.DataFrame:
    if not path.is_file():
        raise DataFileNotFoundError(file_path=str(path))
    try:
        return pd.read_csv(path, header=header, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError as e:
        raise DataFormatError(file_path=str(path), reason="file is empty", cause=e) from e
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise DataFormatError(file_path=str(path), reason="not a comma-separated UTF-8 table", cause=e) from e
    except OSError as e:
        raise DataFileNotFoundError(file_path=str(path), cause=e) from e


def _parse_column(column: pd.Series) -> pd.Series:
    """Correctly rounded floats; a column with any unparsable cell is coerced so the cell reads NaN."""
    stripped = column.str.strip()
    try:
        return pd.Series(stripped.to_numpy(dtype=object).astype(float), index=column.index)
    except ValueError:
        return pd.to_numeric(stripped, errors="coerce")


def _to_numeric(frame: pd.DataFrame, path: Path) -> np.ndarray:
    numeric = frame.apply(_parse_column)
    bad = ~np.isfinite(numeric.to_numpy(dtype=float))
    if bad.any():
        columns = [str(c) for c, flagged in zip(frame.columns, bad.any(axis=0)) if flagged]
        raise DataFormatError(file_path=str(path), columns=columns, reason="non-numeric or missing cells")
    return numeric.to_numpy(dtype=float)


def read_data_matrix(path: PathLike, index_col: Optional[str] = None) -> DataMatrix:
    """Load an observation matrix; ``index_col`` names a column of row labels."""
    path = Path(path)
    frame = _read_frame(path, header=0)
    if frame.shape[0] == 0:
        raise DataFormatError(file_path=str(path), reason="no data rows")

    labels = None
    if index_col is not None:
        if index_col not in frame.columns:
            raise DataFormatError(file_path=str(path), columns=[index_col], reason="label column not found")
        labels = tuple(frame.pop(index_col).str.strip())
    if frame.shape[1] == 0:
        raise DataFormatError(file_path=str(path), reason="no numeric columns")

    values = _to_numeric(frame, path)
    logger.info(
        "Data file loaded",
        extra={"file_path": str(path), "n": values.shape[0], "p": values.shape[1], "labelled": labels is not None},
    )
    return DataMatrix.from_array(values, columns=[str(c).strip() for c in frame.columns], row_labels=labels)


def read_target_matrix(path: PathLike) -> np.ndarray:
    """Square matrix from a header-free CSV; validation is left to the target builder."""
    path = Path(path)
    frame = _read_frame(path, header=None)
    values = _to_numeric(frame, path)
    if values.shape[0] != values.shape[1]:
        raise DataFormatError(file_path=str(path), reason=f"target matrix is {values.shape[0]}x{values.shape[1]}, not square")
    return values
