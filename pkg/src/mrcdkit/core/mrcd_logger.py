"""
Logger manager.

Every module asks for its logger here and gets a JSON service log of its
own; the package root collects everything else:

    <log dir>/                       src/logs, or $MRCDKIT_LOG_DIR
        app.log                      all records at INFO and above
        error.log                    ERROR and above, with source location
        <parent_folder>/<service>/service.log

    logger = get_logger("estimator", parent_folder="mrcd")
    logger.info("rho calibrated", extra={"rho": 0.0114})
"""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Dict, List, Optional

from .logger.context import get_current_context, run_context
from .logger.core import ROOT_LOGGER_NAME, HandlerConfig, install_handler, setup_logger
from .logger.formatters import JSONFormatter, PrettyFormatter
from .logger.handlers import AsyncConsoleHandler, AsyncHandler, AsyncRotatingFileHandler

LOG_DIR_ENV_VAR = "MRCDKIT_LOG_DIR"
DEFAULT_LOGS_DIR = Path(__file__).resolve().parents[2] / "logs"


def resolve_logs_dir() -> Path:
    override = os.environ.get(LOG_DIR_ENV_VAR)
    return Path(override) if override else DEFAULT_LOGS_DIR


class MrcdLoggerManager:
    """Process-wide owner of the package loggers and their background writers."""

    _instance: Optional["MrcdLoggerManager"] = None

    def __new__(cls) -> "MrcdLoggerManager":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._setup()
        return cls._instance

    def _setup(self) -> None:
        self.logs_dir = resolve_logs_dir()
        self._loggers: Dict[str, logging.Logger] = {}
        self._writers: List[AsyncHandler] = []
        self._console: Optional[AsyncHandler] = None

        app = AsyncRotatingFileHandler(str(self.logs_dir / "app.log"), level=logging.INFO)
        errors = AsyncRotatingFileHandler(str(self.logs_dir / "error.log"), level=logging.ERROR)
        self._writers += [app, errors]
        self._root = setup_logger(
            ROOT_LOGGER_NAME,
            level=logging.INFO,
            handlers=[
                HandlerConfig(app, PrettyFormatter(service_name=ROOT_LOGGER_NAME)),
                HandlerConfig(errors, JSONFormatter(service_name=ROOT_LOGGER_NAME, include_location=True), logging.ERROR),
            ],
        )

    def get_logger(self, service_name: Optional[str] = None, parent_folder: Optional[str] = None) -> logging.Logger:
        """The root logger for ``None``, else the (cached) service logger."""
        if service_name is None:
            return self._root
        parts = [part for part in (parent_folder, service_name) if part]
        name = ".".join([ROOT_LOGGER_NAME, *parts])
        if name not in self._loggers:
            writer = AsyncRotatingFileHandler(str(self.logs_dir.joinpath(*parts, "service.log")))
            self._writers.append(writer)
            self._loggers[name] = setup_logger(
                name,
                level=logging.DEBUG,
                handlers=[HandlerConfig(writer, JSONFormatter(service_name=service_name))],
            )
        return self._loggers[name]

    def enable_console(self, level: int = logging.INFO) -> None:
        if self._console is None:
            self._console = install_handler(
                self._root, HandlerConfig(AsyncConsoleHandler(level=level), PrettyFormatter(use_colors=True), level)
            )

    def shutdown(self) -> None:
        for writer in [*self._writers, *([self._console] if self._console else [])]:
            writer.stop()


_manager = MrcdLoggerManager()


def get_logger(service_name: Optional[str] = None, parent_folder: Optional[str] = None) -> logging.Logger:
    return _manager.get_logger(service_name=service_name, parent_folder=parent_folder)


def enable_console_logging(level: int = logging.INFO) -> None:
    _manager.enable_console(level)


def shutdown_logger() -> None:
    """Drain the background writers; atexit does this too."""
    _manager.shutdown()


__all__ = [
    "get_logger",
    "enable_console_logging",
    "shutdown_logger",
    "resolve_logs_dir",
    "run_context",
    "get_current_context",
]
