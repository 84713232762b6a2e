"""Wall-clock budget shared by the long-running stages."""

from __future__ import annotations

import time


class BudgetExceeded(RuntimeError):
    pass


class Deadline:
    def __init__(self, seconds: float | None):
        self.seconds = seconds
        self._end = None if seconds is None else time.monotonic() + seconds

    def check(self) -> None:
        if self._end is not None and time.monotonic() > self._end:
            raise BudgetExceeded(f"time budget of {self.seconds} s exceeded")
