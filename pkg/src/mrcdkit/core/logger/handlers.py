from __future__ import annotations

import atexit
import logging
import queue
import sys
import threading
from logging.handlers import QueueHandler, QueueListener, RotatingFileHandler
from pathlib import Path
from typing import Optional, TextIO


class AsyncHandler:
    """
    Runs a blocking handler behind a queue.

    Callers only enqueue; a QueueListener thread formats and writes, so a
    long Monte Carlo loop never waits on the disk. The listener starts on
    the first ``queue_handler()`` call and is drained at interpreter exit.
    """

    def __init__(self, handler: logging.Handler):
        self._handler = handler
        self._queue: queue.SimpleQueue = queue.SimpleQueue()
        self._listener: Optional[QueueListener] = None
        self._lock = threading.Lock()
        atexit.register(self.stop)

    @property
    def handler(self) -> logging.Handler:
        return self._handler

    @property
    def running(self) -> bool:
        return self._listener is not None

    def queue_handler(self) -> QueueHandler:
        with self._lock:
            if self._listener is None:
                self._listener = QueueListener(self._queue, self._handler, respect_handler_level=True)
                self._listener.start()
        return QueueHandler(self._queue)

    def stop(self) -> None:
        """Flush pending records and close the target. Safe to call twice."""
        with self._lock:
            if self._listener is None:
                return
            self._listener.stop()
            self._listener = None
            self._handler.flush()
            self._handler.close()


class AsyncConsoleHandler(AsyncHandler):
    """Console output on standard error; standard output carries command results."""

    def __init__(self, stream: Optional[TextIO] = None, level: int = logging.INFO):
        handler = logging.StreamHandler(stream or sys.stderr)
        handler.setLevel(level)
        super().__init__(handler)


class AsyncRotatingFileHandler(AsyncHandler):
    """Size-rotated log file; the parent folder is created on demand."""

    def __init__(
        self,
        filename: str,
        max_bytes: int = 10 * 1024 * 1024,
        backup_count: int = 5,
        level: int = logging.DEBUG,
    ):
        path = Path(filename)
        path.parent.mkdir(parents=True, exist_ok=True)
        handler = RotatingFileHandler(path, maxBytes=max_bytes, backupCount=backup_count, encoding="utf-8")
        handler.setLevel(level)
        super().__init__(handler)
        self.filename = str(path)
