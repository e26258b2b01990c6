from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Union

from .context import get_current_context
from .formatters import PrettyFormatter
from .handlers import AsyncConsoleHandler, AsyncHandler

ROOT_LOGGER_NAME = "mrcdkit"


class RunContextFilter(logging.Filter):
    """Copies the active run context onto each record without overwriting explicit extras."""

    def filter(self, record: logging.LogRecord) -> bool:
        ctx = get_current_context()
        if ctx is not None:
            for key, value in ctx.to_dict().items():
                record.__dict__.setdefault(key, value)
        return True


@dataclass
class HandlerConfig:
    handler: Union[AsyncHandler, logging.Handler]
    formatter: Optional[logging.Formatter] = None
    level: Optional[int] = None


def install_handler(logger: logging.Logger, config: HandlerConfig) -> Optional[AsyncHandler]:
    """
    Attach one handler to ``logger``.

    An AsyncHandler is attached through its queue handler, and the run
    context filter goes on that queue handler: filters run in the calling
    thread, the only place the context is visible. Returns the AsyncHandler
    so the owner can stop it later.
    """
    target = config.handler.handler if isinstance(config.handler, AsyncHandler) else config.handler
    target.setFormatter(config.formatter or PrettyFormatter(service_name=logger.name))
    target.setLevel(config.level if config.level is not None else logger.level)

    if not isinstance(config.handler, AsyncHandler):
        logger.addHandler(target)
        return None
    front = config.handler.queue_handler()
    front.addFilter(RunContextFilter())
    logger.addHandler(front)
    return config.handler


def setup_logger(
    name: str = ROOT_LOGGER_NAME,
    level: int = logging.INFO,
    handlers: Optional[List[HandlerConfig]] = None,
) -> logging.Logger:
    """
    (Re)build a logger from scratch.

    Without handlers it gets a single console handler. Everything below
    the package root propagates to it; the root itself stops propagation.
    """
    logger = logging.getLogger(name)
    logger.handlers.clear()
    logger.setLevel(level)
    logger.propagate = name != ROOT_LOGGER_NAME
    for config in handlers or [HandlerConfig(AsyncConsoleHandler(level=level))]:
        install_handler(logger, config)
    return logger
