"""Pieces shared by the two dynamic solvers."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Optional

from .core import INF, ChangeEvent, ChangeKind, Hypergraph, HypergraphError
from .pqueue import AddressableHeap
from .statics import SPState


class Color(enum.Enum):
    WHITE = "white"
    PINK = "pink"
    RED = "red"


RED = Color.RED
PINK = Color.PINK


@dataclass
class Counters:
    """Work done by the last event.

    ``scans`` counts neighbor examinations (hyperedge members for HE-DSP,
    adjacency entries for DR-DSP); ``queue_updates`` counts candidate-queue
    updates in the underlying graph.  ``affected`` is the number of vertices
    whose distance changed and ``reparented`` the number that kept their
    distance under a new parent.
    """

    enqueues: int = 0
    dequeues: int = 0
    scans: int = 0
    queue_updates: int = 0
    affected: int = 0
    reparented: int = 0

    @property
    def delta(self) -> int:
        return self.affected + self.reparented

    @property
    def work(self) -> int:
        return self.scans + self.queue_updates


@dataclass
class EventTrace:
    """Per-event record used to check the correctness lemmas."""

    kind: str
    edge: int
    argmin: Optional[int] = None
    old_dist: dict[int, float] = field(default_factory=dict)
    enqueued: set[int] = field(default_factory=set)
    q_pops: list[float] = field(default_factory=list)
    m_pops: list[float] = field(default_factory=list)
    colors: dict[int, Color] = field(default_factory=dict)


class DynamicSolver:
    """Single-source shortest hyperpaths kept current under hyperedge changes.

    Subclasses provide ``decrease`` and ``increase``; both expect the
    hypergraph to already carry the new weight.  :meth:`apply` performs that
    mutation and dispatches, treating insertion as a decrease from ``INF``
    and deletion as an increase to ``INF``.

    Parameters
    ----------
    h : Hypergraph
        Mutated in place by :meth:`apply`.
    source : int
    rng : random.Random, optional
        Enables randomized tie-breaking, i.e. a random relationship tree.
    trace : bool
        Record an :class:`EventTrace` for every event in ``last_trace``.
    """

    name = "base"

    def __init__(self, h: Hypergraph, source: int, rng: Optional[random.Random] = None,
                 trace: bool = False):
        self.h = h
        self.rng = rng
        self.trace = trace
        self.counters = Counters()
        self.last_trace: Optional[EventTrace] = None
        self.state: SPState = self._initial_state(source)

    def _initial_state(self, source: int) -> SPState:
        raise NotImplementedError

    @property
    def source(self) -> int:
        return self.state.source

    def apply(self, change: ChangeEvent) -> set[int]:
        """Apply ``change`` to the hypergraph and repair the state.

        Returns the vertices whose distance changed.  An invalid change raises
        :class:`~hyperdsp.core.InvalidChange` and leaves everything untouched.
        """
        self.h.apply(change)
        if change.kind in (ChangeKind.DECREASE, ChangeKind.INSERT):
            return self.decrease(change.edge)
        return self.increase(change.edge)

    def decrease(self, e: int, w_new: Optional[float] = None) -> set[int]:
        raise NotImplementedError

    def increase(self, e: int, w_new: Optional[float] = None) -> set[int]:
        raise NotImplementedError

    def _begin(self, kind: str, e: int, w_new: Optional[float]) -> Optional[EventTrace]:
        if not 0 <= e < self.h.m:
            raise HypergraphError(f"unknown hyperedge {e}")
        if w_new is not None and w_new != self.h.weights[e]:
            raise HypergraphError(
                f"hyperedge {e} holds weight {self.h.weights[e]}, expected {w_new}"
            )
        self.counters = Counters()
        tr = EventTrace(kind, e) if self.trace else None
        self.last_trace = tr
        return tr

    def _argmin(self, vs) -> int:
        dist = self.state.dist
        best = min(dist[v] for v in vs)
        if self.rng is None:
            for v in vs:
                if dist[v] == best:
                    return v
        return self.rng.choice([v for v in vs if dist[v] == best])

    def _pick(self, cands: list):
        if len(cands) == 1 or self.rng is None:
            return cands[0]
        return self.rng.choice(cands)

    def _settled_chain(self, q: int, z: int, colors: dict, pending: AddressableHeap) -> bool:
        """True if ``q``'s distance cannot change in the running increase.

        Only consulted when ``dist[q] == dist[z]``, which requires zero
        effective weight: such a ``q`` may still hang below a vertex whose
        color is not known yet.
        """
        parent = self.state.parent
        u: Optional[int] = q
        for _ in range(self.state.n):
            if u is None:
                return False
            if u == self.state.source:
                return True
            if u == z or u in pending or colors.get(u) is RED:
                return False
            u = parent[u]
        return False

    def distances(self) -> list[float]:
        return list(self.state.dist)


def finish_increase(st: SPState, red_old: dict[int, float], pinks: int,
                    counters: Counters) -> set[int]:
    dist = st.dist
    changed = {z for z, d in red_old.items() if dist[z] != d}
    counters.affected = len(changed)
    counters.reparented = pinks + (len(red_old) - len(changed))
    return changed


__all__ = [
    "Color", "Counters", "DynamicSolver", "EventTrace", "INF", "PINK", "RED",
    "finish_increase",
]
