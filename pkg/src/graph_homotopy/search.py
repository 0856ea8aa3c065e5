"""Breadth-first search over implicit state spaces, with a state budget and
cooperative cancellation, plus the three-valued result used by the
equivalence procedures."""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable
from dataclasses import dataclass, field
from typing import Any, Protocol

from .errors import SearchCancelled

EQUIVALENT = "equivalent"
INEQUIVALENT = "inequivalent"
UNKNOWN = "unknown"


class CancelToken(Protocol):
    def is_set(self) -> bool: ...


@dataclass
class BFSOutcome:
    path: list | None
    visited: int
    budget_hit: bool = False


def bfs_path(
    start: Hashable,
    goal: Hashable,
    neighbors: Callable[[Any], Iterable[Hashable]],
    *,
    max_states: int | None = None,
    cancel: CancelToken | None = None,
) -> BFSOutcome:
    """Shortest path from ``start`` to ``goal``; neighbours are expanded in the
    order ``neighbors`` yields them.  ``cancel`` is polled between layers."""
    if start == goal:
        return BFSOutcome([start], 1)
    parent: dict = {start: None}
    frontier = [start]
    while frontier:
        if cancel is not None and cancel.is_set():
            raise SearchCancelled("search cancelled")
        nxt = []
        for state in frontier:
            for nb in neighbors(state):
                if nb in parent:
                    continue
                parent[nb] = state
                if nb == goal:
                    path = [nb]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return BFSOutcome(path[::-1], len(parent))
                if max_states is not None and len(parent) >= max_states:
                    return BFSOutcome(None, len(parent), budget_hit=True)
                nxt.append(nb)
        frontier = nxt
    return BFSOutcome(None, len(parent))


@dataclass(frozen=True)
class Equivalence:
    """Verdict of a bounded equivalence search.

    ``status`` is ``"equivalent"``, ``"inequivalent"`` (only ever certified by
    an invariant such as parity) or ``"unknown"`` (no connection found within
    the budget).  Truthiness means "equivalent".
    """

    status: str
    reason: str
    witness: tuple = ()
    explored: int = 0
    extensions: int = 0
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.status == EQUIVALENT

    @property
    def equivalent(self) -> bool | None:
        if self.status == EQUIVALENT:
            return True
        if self.status == INEQUIVALENT:
            return False
        return None

    @property
    def budget_exhausted(self) -> bool:
        return self.status == UNKNOWN
