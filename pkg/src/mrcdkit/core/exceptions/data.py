"""
Input data errors: unreadable files, malformed tables, arrays of the wrong shape.
"""

from typing import Any, Dict, Optional, Sequence

from .base import MrcdkitException


class DataException(MrcdkitException):
    exit_code = 2
    error_code = "DATA_ERROR"
    error_message = "Invalid input data"


class DataFileNotFoundError(DataException):
    error_code = "DATA_FILE_NOT_FOUND_ERROR"
    error_message = "Data file not found"

    def __init__(self, file_path: Optional[str] = None, **kwargs: Any):
        super().__init__(file_path=file_path, **kwargs)

    def describe(self, details: Dict[str, Any]) -> Optional[str]:
        return f"Data file not found or unreadable: {details['file_path']}" if "file_path" in details else None


class DataFormatError(DataException):
    """Non-numeric or missing cells, no rows, or no usable columns."""

    error_code = "DATA_FORMAT_ERROR"
    error_message = "Malformed data file"

    def __init__(
        self,
        file_path: Optional[str] = None,
        columns: Optional[Sequence[str]] = None,
        reason: Optional[str] = None,
        **kwargs: Any,
    ):
        super().__init__(file_path=file_path, columns=list(columns) if columns else None, reason=reason, **kwargs)

    def describe(self, details: Dict[str, Any]) -> Optional[str]:
        message = f"Malformed data file {details.get('file_path', '<input>')}: {details.get('reason', 'unreadable content')}"
        if "columns" in details:
            message += f" (columns: {', '.join(map(str, details['columns']))})"
        return message


class EmptySampleError(DataException):
    """A statistic got fewer observations than it needs."""

    exit_code = 1
    error_code = "EMPTY_SAMPLE_ERROR"
    error_message = "empty sample"

    def __init__(self, required: int = 1, actual: int = 0, statistic: Optional[str] = None, **kwargs: Any):
        super().__init__(required=required, actual=actual, statistic=statistic, **kwargs)

    def describe(self, details: Dict[str, Any]) -> Optional[str]:
        if not details.get("actual"):
            return "empty sample"
        return f"{details.get('statistic', 'statistic')} needs at least {details['required']} observations, got {details['actual']}"


class DimensionMismatchError(DataException):
    exit_code = 1
    error_code = "DIMENSION_MISMATCH_ERROR"
    error_message = "Dimension mismatch"

    def __init__(self, expected: Any = None, actual: Any = None, what: Optional[str] = None, **kwargs: Any):
        super().__init__(expected=expected, actual=actual, what=what, **kwargs)

    def describe(self, details: Dict[str, Any]) -> Optional[str]:
        return (
            f"Dimension mismatch for {details.get('what', 'input')}: "
            f"expected {details.get('expected')}, got {details.get('actual')}"
        )
