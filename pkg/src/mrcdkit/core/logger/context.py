"""
Run identity carried by every log record.

A command opens a run; each Monte Carlo replication opens a child run
that keeps the parent's id. Pool workers open their child run inside the
worker thread, so a plain ContextVar is enough.
"""
from __future__ import annotations

import secrets
import time
from contextvars import ContextVar, Token
from dataclasses import dataclass, field, replace
from typing import Any, Dict, Optional


@dataclass(frozen=True)
class RunContext:
    run_id: str = field(default_factory=lambda: secrets.token_hex(8))
    command: Optional[str] = None
    seed: Optional[int] = None
    replication: Optional[int] = None
    started: float = field(default_factory=time.time)
    extra: Dict[str, Any] = field(default_factory=dict)

    def child(self, replication: Optional[int] = None, **extra: Any) -> RunContext:
        return replace(
            self,
            replication=self.replication if replication is None else replication,
            extra={**self.extra, **extra},
        )

    def to_dict(self) -> Dict[str, Any]:
        fields = {"run_id": self.run_id, "command": self.command, "seed": self.seed, "replication": self.replication}
        return {**{k: v for k, v in fields.items() if v is not None}, **self.extra}


_current: ContextVar[Optional[RunContext]] = ContextVar("mrcdkit_run", default=None)


def get_current_context() -> Optional[RunContext]:
    return _current.get()


class run_context:
    """
    ``with run_context(command="fit", seed=7) as ctx:`` opens a run;
    ``with run_context(parent=ctx, replication=3):`` opens a child of it.
    """

    def __init__(
        self,
        command: Optional[str] = None,
        seed: Optional[int] = None,
        replication: Optional[int] = None,
        parent: Optional[RunContext] = None,
        **extra: Any,
    ):
        if parent is not None:
            self.context = parent.child(replication, **extra)
        else:
            self.context = RunContext(command=command, seed=seed, replication=replication, extra=extra)
        self._token: Optional[Token] = None

    def __enter__(self) -> RunContext:
        self._token = _current.set(self.context)
        return self.context

    def __exit__(self, *exc_info: Any) -> None:
        _current.reset(self._token)
