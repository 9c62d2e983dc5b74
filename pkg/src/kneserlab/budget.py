"""Node-count and wall-clock limits for the exhaustive searches."""

from __future__ import annotations

import os
import time

from .errors import BudgetExhausted

ENV_BUDGET_MS = "KNESERLAB_BUDGET_MS"


class Budget:
    """Counts search nodes and raises :class:`BudgetExhausted` past a limit.

    A budget is stateful: pass the same instance through nested searches to
    share one allowance. ``None`` limits are unbounded.
    """

    _CLOCK_EVERY = 1024

    def __init__(self, max_nodes: int | None = None, max_ms: int | None = None):
        self.max_nodes = max_nodes
        self.max_ms = max_ms
        self.nodes = 0
        self._start = time.monotonic()

    @classmethod
    def from_env(cls, max_nodes: int | None = None, max_ms: int | None = None) -> "Budget":
        if max_ms is None:
            raw = os.environ.get(ENV_BUDGET_MS)
            if raw:
                max_ms = int(raw)
        return cls(max_nodes=max_nodes, max_ms=max_ms)

    @property
    def elapsed_ms(self) -> int:
        return int((time.monotonic() - self._start) * 1000)

    def tick(self, count: int = 1) -> None:
        self.nodes += count
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExhausted(f"node budget of {self.max_nodes} exhausted", nodes=self.nodes)
        if self.max_ms is not None and self.nodes % self._CLOCK_EVERY < count:
            if self.elapsed_ms > self.max_ms:
                raise BudgetExhausted(f"time budget of {self.max_ms} ms exhausted", nodes=self.nodes)


class _Unlimited(Budget):
    def tick(self, count: int = 1) -> None:
        self.nodes += count


def ensure(budget: Budget | None) -> Budget:
    return budget if budget is not None else _Unlimited()
