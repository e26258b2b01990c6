import traceback
from typing import Any, Dict, Optional


class MrcdkitException(Exception):
    """
    Root of every error the package raises.

    Subclasses set ``exit_code``, ``error_code`` and a fallback
    ``error_message`` as class attributes, take their own detail fields
    as keywords and override ``describe`` to turn those fields into a
    message. Fields left as None are not recorded.
    """

    exit_code: int = 1
    error_code: str = "INTERNAL_ERROR"
    error_message: str = "An internal error occurred"

    def __init__(
        self,
        message: Optional[str] = None,
        error_details: Optional[Dict[str, Any]] = None,
        cause: Optional[BaseException] = None,
        exit_code: Optional[int] = None,
        error_code: Optional[str] = None,
        **fields: Any,
    ):
        self.exit_code = type(self).exit_code if exit_code is None else exit_code
        self.error_code = error_code or type(self).error_code
        self.error_details: Dict[str, Any] = dict(error_details or {})
        self.error_details.update({key: value for key, value in fields.items() if value is not None})
        self.error_message = message or self.describe(self.error_details) or type(self).error_message
        self.cause = cause

        captured = traceback.format_exc()
        self.traceback_info = None if captured == "NoneType: None\n" else captured

        if cause is not None:
            self.error_details["cause"] = str(cause)
            self.error_details["cause_type"] = type(cause).__name__

        super().__init__(self.error_message)

    def describe(self, details: Dict[str, Any]) -> Optional[str]:
        """Message built from the recorded fields; None falls back to ``error_message``."""
        return None

    def to_dict(self, include_traceback: bool = False, include_details: bool = True) -> Dict[str, Any]:
        """Payload printed on standard error when a command fails."""
        payload: Dict[str, Any] = {
            "exit_code": self.exit_code,
            "error_code": self.error_code,
            "error_message": self.error_message,
        }
        if include_details and self.error_details:
            payload["error_details"] = self.error_details
        if include_traceback and self.traceback_info:
            payload["traceback"] = self.traceback_info
        return payload
