from enum import Enum
from typing import Dict


class ErrorDetailLevel(str, Enum):
    """How much of a failure the command line prints: code and message, plus details, plus traceback."""

    MINIMAL = "minimal"
    STANDARD = "standard"
    FULL = "full"

    def to_flags(self) -> Dict[str, bool]:
        return {
            "include_details": self is not ErrorDetailLevel.MINIMAL,
            "include_traceback": self is ErrorDetailLevel.FULL,
        }


def get_error_level_from_env(app_env: str) -> ErrorDetailLevel:
    """dev/local print everything, test/stage omit tracebacks, anything else is treated as prod."""
    env = (app_env or "").lower()
    if any(name in env for name in ("dev", "local")):
        return ErrorDetailLevel.FULL
    if any(name in env for name in ("test", "stage")):
        return ErrorDetailLevel.STANDARD
    return ErrorDetailLevel.MINIMAL
