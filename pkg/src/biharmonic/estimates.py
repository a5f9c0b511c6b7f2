"""Result containers shared by the query algorithms."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

__all__ = ["Estimate", "QueryTimeout"]


class QueryTimeout(RuntimeError):
    """A query exceeded its wall-clock budget and was aborted."""


@dataclass
class Estimate:
    """An answered query.

    ``walks_or_iters`` counts walk quadruples for the sampling methods and
    hop iterations for the deterministic ones; ``params`` records the
    parameters the run actually used (truncation length, range bound,
    sample caps, ...).
    """

    value: float
    method: str
    walks_or_iters: int
    seconds: float
    params: dict[str, Any] = field(default_factory=dict)
