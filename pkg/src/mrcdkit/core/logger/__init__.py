"""
Queue-backed structured logging: handlers, formatters and the run context
stamped onto every record.
"""

from .context import RunContext, get_current_context, run_context
from .core import ROOT_LOGGER_NAME, HandlerConfig, RunContextFilter, install_handler, setup_logger
from .formatters import JSONFormatter, PrettyFormatter, extra_fields, serialize_value
from .handlers import AsyncConsoleHandler, AsyncHandler, AsyncRotatingFileHandler

__all__ = [
    "ROOT_LOGGER_NAME",
    "HandlerConfig",
    "RunContextFilter",
    "install_handler",
    "setup_logger",
    "AsyncHandler",
    "AsyncConsoleHandler",
    "AsyncRotatingFileHandler",
    "JSONFormatter",
    "PrettyFormatter",
    "extra_fields",
    "serialize_value",
    "RunContext",
    "run_context",
    "get_current_context",
]
