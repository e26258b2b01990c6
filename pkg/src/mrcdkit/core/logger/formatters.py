from __future__ import annotations

import json
import logging
from datetime import datetime, timezone
from typing import Any, Dict, Optional

import numpy as np

# attributes every LogRecord has; anything else arrived through ``extra=``
_STANDARD_ATTRS = frozenset(vars(logging.LogRecord("", 0, "", 0, "", None, None))) | {"message", "asctime"}

# arrays with more items than this are logged as a summary
MAX_ARRAY_ITEMS = 32
_MAX_DEPTH = 8


def serialize_value(value: Any, depth: int = 0) -> Any:
    """
    JSON-safe form of an ``extra=`` value.

    numpy scalars become Python numbers; small arrays become lists and
    large ones a shape/min/max summary.
    """
    if value is None or isinstance(value, (str, int, float, bool)):
        return value
    if depth >= _MAX_DEPTH:
        return repr(value)
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        if value.size <= MAX_ARRAY_ITEMS:
            return value.tolist()
        summary: Dict[str, Any] = {"shape": list(value.shape)}
        if value.size and np.issubdtype(value.dtype, np.number):
            summary["min"] = float(value.min())
            summary["max"] = float(value.max())
        return summary
    if isinstance(value, dict):
        return {str(k): serialize_value(v, depth + 1) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [serialize_value(v, depth + 1) for v in value]
    if isinstance(value, datetime):
        return value.isoformat()
    return str(value)


def extra_fields(record: logging.LogRecord) -> Dict[str, Any]:
    return {
        key: serialize_value(value)
        for key, value in vars(record).items()
        if key not in _STANDARD_ATTRS and not key.startswith("_")
    }


class JSONFormatter(logging.Formatter):
    """
    One JSON object per line, extras flattened into the top level:

        {"time": "...", "level": "INFO", "service": "mrcd",
         "message": "rho calibrated", "rho": 0.0114, "run_id": "..."}
    """

    def __init__(self, service_name: Optional[str] = None, include_location: bool = False):
        super().__init__()
        self.service_name = service_name
        self.include_location = include_location

    def format(self, record: logging.LogRecord) -> str:
        entry: Dict[str, Any] = {
            "time": datetime.fromtimestamp(record.created, tz=timezone.utc).isoformat(timespec="milliseconds"),
            "level": record.levelname,
            "service": self.service_name or record.name,
            "message": record.getMessage(),
        }
        if self.include_location:
            entry["where"] = f"{record.module}.{record.funcName}:{record.lineno}"
        entry.update(extra_fields(record))
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(entry, ensure_ascii=False, default=str)


class PrettyFormatter(logging.Formatter):
    """``12:00:01 INFO    mrcd: fit finished [h=150 rho=0.0]``"""

    _COLORS = {"WARNING": "\033[33m", "ERROR": "\033[31m", "CRITICAL": "\033[31;1m"}
    _RESET = "\033[0m"

    def __init__(self, service_name: Optional[str] = None, use_colors: bool = False):
        super().__init__()
        self.service_name = service_name
        self.use_colors = use_colors

    def format(self, record: logging.LogRecord) -> str:
        stamp = datetime.fromtimestamp(record.created).strftime("%H:%M:%S")
        level = f"{record.levelname:<7}"
        if self.use_colors and record.levelname in self._COLORS:
            level = f"{self._COLORS[record.levelname]}{level}{self._RESET}"
        line = f"{stamp} {level} {self.service_name or record.name}: {record.getMessage()}"
        extras = extra_fields(record)
        if extras:
            line += " [" + " ".join(f"{k}={v}" for k, v in extras.items()) + "]"
        if record.exc_info:
            line += "\n" + self.formatException(record.exc_info)
        return line
