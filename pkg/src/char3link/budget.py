"""Cooperative time budgets: long computations call `checkpoint()` periodically."""

from __future__ import annotations

import contextlib
import time
from contextvars import ContextVar
from typing import Iterator, Optional

_deadline: ContextVar[Optional[float]] = ContextVar("deadline", default=None)


class BudgetExceeded(RuntimeError):
    pass


def checkpoint() -> None:
    deadline = _deadline.get()
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceeded("time budget exceeded")


@contextlib.contextmanager
def budget(seconds: Optional[float]) -> Iterator[None]:
    """Run the body under a wall-clock budget (None means unlimited)."""
    if seconds is None:
        yield
        return
    token = _deadline.set(time.monotonic() + seconds)
    try:
        yield
    finally:
        _deadline.reset(token)
