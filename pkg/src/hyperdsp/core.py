"""Weighted undirected hypergraphs, hyperpaths and change events.

Vertices are dense integers ``0..n-1``.  Hyperedges keep their id for the
lifetime of a :class:`Hypergraph`; deleting one marks it dead with weight
``INF`` so it can be inserted back later.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, TextIO

INF = math.inf


class HypergraphError(ValueError):
    """Malformed hypergraph input."""


class InvalidHyperpath(HypergraphError):
    """A hyperedge sequence whose consecutive members do not intersect."""

    def __init__(self, position: int, first: int, second: int):
        self.position = position
        self.first = first
        self.second = second
        super().__init__(
            f"hyperedges {first} and {second} at positions {position}, "
            f"{position + 1} do not intersect"
        )


class InvalidChange(HypergraphError):
    """A change event that does not apply to the current hypergraph."""


class ChangeKind(str, enum.Enum):
    INCREASE = "inc"
    DECREASE = "dec"
    INSERT = "ins"
    DELETE = "del"


@dataclass(frozen=True)
class ChangeEvent:
    kind: ChangeKind
    edge: int
    weight: Optional[float] = None

    @classmethod
    def increase(cls, edge: int, weight: float) -> "ChangeEvent":
        return cls(ChangeKind.INCREASE, edge, float(weight))

    @classmethod
    def decrease(cls, edge: int, weight: float) -> "ChangeEvent":
        return cls(ChangeKind.DECREASE, edge, float(weight))

    @classmethod
    def insert(cls, edge: int, weight: float) -> "ChangeEvent":
        return cls(ChangeKind.INSERT, edge, float(weight))

    @classmethod
    def delete(cls, edge: int) -> "ChangeEvent":
        return cls(ChangeKind.DELETE, edge)

    def to_line(self) -> str:
        if self.kind is ChangeKind.DELETE:
            return f"{self.kind.value} {self.edge}"
        return f"{self.kind.value} {self.edge} {format_weight(self.weight)}"

    @classmethod
    def from_line(cls, line: str) -> "ChangeEvent":
        parts = line.split()
        try:
            kind = ChangeKind(parts[0])
            edge = int(parts[1])
            if kind is ChangeKind.DELETE:
                if len(parts) != 2:
                    raise ValueError("delete takes no weight")
                return cls(kind, edge)
            if len(parts) != 3:
                raise ValueError("missing weight")
            return cls(kind, edge, float(parts[2]))
        except (IndexError, ValueError) as exc:
            raise InvalidChange(f"bad change line {line!r}: {exc}") from None


def format_weight(w: float) -> str:
    if w == INF:
        return "inf"
    return f"{w:.17g}"


class Hypergraph:
    """A weighted undirected hypergraph with a vertex-to-hyperedge index.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of (vertices, weight)
        Hyperedges in id order.  Vertex lists are sorted and deduplicated.

    Attributes
    ----------
    members : list of tuple
        Sorted vertex tuple of every hyperedge, alive or not.
    weights : list of float
        Current weight; ``INF`` for dead hyperedges.
    alive : list of bool
    incidence : list of dict
        ``incidence[v]`` holds the ids of alive hyperedges containing ``v``
        (a dict is used as an insertion-ordered set).
    """

    def __init__(self, n: int, edges: Iterable[tuple[Iterable[int], float]] = ()):
        if n < 0:
            raise HypergraphError(f"vertex count must be nonnegative, got {n}")
        self.n = n
        self.members: list[tuple[int, ...]] = []
        self.weights: list[float] = []
        self.alive: list[bool] = []
        self.incidence: list[dict[int, None]] = [{} for _ in range(n)]
        for vertices, weight in edges:
            self.add_edge(vertices, weight)

    @property
    def m(self) -> int:
        return len(self.members)

    def add_edge(self, vertices: Iterable[int], weight: float, alive: bool = True) -> int:
        """Append a hyperedge and return its id.

        A dead hyperedge is stored with weight ``INF`` and can later be
        revived by an insert event.
        """
        vs = tuple(sorted(set(vertices)))
        if not vs:
            raise HypergraphError(f"hyperedge {self.m} is empty")
        if vs[0] < 0 or vs[-1] >= self.n:
            raise HypergraphError(f"hyperedge {self.m} has a vertex outside 0..{self.n - 1}")
        weight = float(weight)
        if alive and not (0 <= weight < INF):
            raise HypergraphError(f"hyperedge {self.m} has invalid weight {weight}")
        eid = len(self.members)
        self.members.append(vs)
        self.alive.append(alive)
        self.weights.append(weight if alive else INF)
        if alive:
            for v in vs:
                self.incidence[v][eid] = None
        return eid

    def alive_edges(self) -> list[int]:
        return [e for e, a in enumerate(self.alive) if a]

    def dead_edges(self) -> list[int]:
        return [e for e, a in enumerate(self.alive) if not a]

    def phi(self) -> int:
        """Sum of squared cardinalities over alive hyperedges."""
        return sum(len(vs) ** 2 for vs, a in zip(self.members, self.alive) if a)

    def copy(self) -> "Hypergraph":
        h = Hypergraph.__new__(Hypergraph)
        h.n = self.n
        h.members = list(self.members)
        h.weights = list(self.weights)
        h.alive = list(self.alive)
        h.incidence = [dict(inc) for inc in self.incidence]
        return h

    def _check_edge(self, e: int) -> None:
        if not 0 <= e < self.m:
            raise InvalidChange(f"unknown hyperedge {e}")

    def validate(self, change: ChangeEvent) -> None:
        """Raise :class:`InvalidChange` unless ``change`` applies to the current state."""
        e = change.edge
        self._check_edge(e)
        kind = change.kind
        if kind is ChangeKind.DELETE:
            if not self.alive[e]:
                raise InvalidChange(f"delete of dead hyperedge {e}")
            return
        w = change.weight
        if w is None or not (0 <= w < INF):
            raise InvalidChange(f"{kind.value} of hyperedge {e} needs a finite nonnegative weight")
        if kind is ChangeKind.INSERT:
            if self.alive[e]:
                raise InvalidChange(f"insert of alive hyperedge {e}")
            return
        if not self.alive[e]:
            raise InvalidChange(f"{kind.value} of dead hyperedge {e}")
        cur = self.weights[e]
        if kind is ChangeKind.INCREASE and not w > cur:
            raise InvalidChange(f"increase of hyperedge {e} to {w} but current weight is {cur}")
        if kind is ChangeKind.DECREASE and not w < cur:
            raise InvalidChange(f"decrease of hyperedge {e} to {w} but current weight is {cur}")

    def apply(self, change: ChangeEvent) -> float:
        """Validate and apply ``change``; return the previous weight."""
        self.validate(change)
        e = change.edge
        old = self.weights[e]
        kind = change.kind
        if kind is ChangeKind.DELETE:
            self.alive[e] = False
            self.weights[e] = INF
            for v in self.members[e]:
                del self.incidence[v][e]
        elif kind is ChangeKind.INSERT:
            self.alive[e] = True
            self.weights[e] = change.weight
            for v in self.members[e]:
                self.incidence[v][e] = None
        else:
            self.weights[e] = change.weight
        return old

    def check_incidence(self) -> bool:
        """Compare the incidence index against a rebuild from the edge table."""
        fresh: list[set[int]] = [set() for _ in range(self.n)]
        for e, vs in enumerate(self.members):
            if self.alive[e]:
                for v in vs:
                    fresh[v].add(e)
        return all(set(inc) == f for inc, f in zip(self.incidence, fresh))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, m={self.m}, alive={sum(self.alive)})"


def new_hypergraph(n: int, edges: Iterable[tuple[Iterable[int], float]]) -> Hypergraph:
    return Hypergraph(n, edges)


def apply_raw_change(h: Hypergraph, change: ChangeEvent) -> Hypergraph:
    h.apply(change)
    return h


def check_hyperpath(h: Hypergraph, path: Sequence[int]) -> None:
    for e in path:
        if not 0 <= e < h.m:
            raise HypergraphError(f"unknown hyperedge {e}")
    for i in range(len(path) - 1):
        a, b = path[i], path[i + 1]
        if set(h.members[a]).isdisjoint(h.members[b]):
            raise InvalidHyperpath(i, a, b)


def hyperpath_weight(h: Hypergraph, path: Sequence[int]) -> float:
    check_hyperpath(h, path)
    return sum((h.weights[e] for e in path), 0.0)


def is_simple(h: Hypergraph, path: Sequence[int]) -> bool:
    """True iff every pair of non-adjacent hyperedges in ``path`` is disjoint."""
    check_hyperpath(h, path)
    sets = [set(h.members[e]) for e in path]
    for i in range(len(sets)):
        for j in range(i + 2, len(sets)):
            if not sets[i].isdisjoint(sets[j]):
                return False
    return True


def read_hypergraph(f: TextIO) -> Hypergraph:
    """Parse ``n m`` followed by ``m`` lines of ``weight k v_1 ... v_k``.

    A weight of ``inf`` denotes a deleted hyperedge.
    """
    lines = [ln for ln in (raw.strip() for raw in f) if ln and not ln.startswith("#")]
    if not lines:
        raise HypergraphError("empty hypergraph file")
    try:
        n, m = (int(tok) for tok in lines[0].split())
    except ValueError:
        raise HypergraphError(f"bad header {lines[0]!r}") from None
    if len(lines) - 1 != m:
        raise HypergraphError(f"header announces {m} hyperedges, found {len(lines) - 1}")
    h = Hypergraph(n)
    for lineno, line in enumerate(lines[1:], start=2):
        toks = line.split()
        try:
            w = float(toks[0])
            k = int(toks[1])
            vs = [int(t) for t in toks[2:]]
        except (IndexError, ValueError):
            raise HypergraphError(f"line {lineno}: malformed hyperedge {line!r}") from None
        if len(vs) != k:
            raise HypergraphError(f"line {lineno}: expected {k} vertices, got {len(vs)}")
        if w < 0:
            raise HypergraphError(f"line {lineno}: negative weight")
        h.add_edge(vs, w, alive=w < INF)
    return h


def write_hypergraph(h: Hypergraph, f: TextIO) -> None:
    f.write(f"{h.n} {h.m}\n")
    for vs, w in zip(h.members, h.weights):
        f.write(f"{format_weight(w)} {len(vs)} {' '.join(map(str, vs))}\n")


def read_changes(f: TextIO) -> list[ChangeEvent]:
    return [ChangeEvent.from_line(ln) for ln in f if ln.strip() and not ln.startswith("#")]


def write_changes(changes: Iterable[ChangeEvent], f: TextIO) -> None:
    for c in changes:
        f.write(c.to_line() + "\n")
