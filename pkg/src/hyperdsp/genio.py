"""Experiment inputs: geometric hypergraphs, change streams and email logs."""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, TextIO

import numpy as np

from .core import INF, ChangeEvent, ChangeKind, Hypergraph, HypergraphError
from .statics import SPState

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeoParams:
    """Random geometric hypergraph: ``n`` nodes in an ``a`` x ``a`` square,
    one hyperedge per circle of radius ``r`` centered on a grid of spacing ``h``."""

    n: int = 1000
    a: float = 1000.0
    r: float = math.sqrt(1000.0)
    h: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.n < 0 or not (self.a > 0 and self.r > 0 and self.h > 0):
            raise ValueError(f"invalid geometric parameters {self}")


def pair_mean_distance(points: np.ndarray) -> float:
    k = len(points)
    if k < 2:
        raise ValueError("need at least two points")
    diff = points[:, None, :] - points[None, :, :]
    d = np.sqrt((diff ** 2).sum(-1))
    return float(d[np.triu_indices(k, 1)].mean())


def geometric_hypergraph(coords: np.ndarray, a: float, r: float, h: float) -> Hypergraph:
    """Hypergraph of the node sets covered by grid-centered circles.

    Centers sit at multiples of ``h`` in ``[0, a]`` on both axes.  A covered
    set with at least two nodes becomes a hyperedge the first time it is seen
    (centers scanned with x major, y minor); its weight is the mean pairwise
    Euclidean distance of its nodes.
    """
    coords = np.asarray(coords, dtype=float).reshape(-1, 2)
    n = len(coords)
    g = int(math.floor(a / h + 1e-9))
    side = g + 1
    r2 = r * r
    cids, nodes = [], []
    for i, (x, y) in enumerate(coords):
        gx = np.arange(max(0, math.ceil((x - r) / h)), min(g, math.floor((x + r) / h)) + 1)
        gy = np.arange(max(0, math.ceil((y - r) / h)), min(g, math.floor((y + r) / h)) + 1)
        if not len(gx) or not len(gy):
            continue
        inside = ((gx * h - x) ** 2)[:, None] + ((gy * h - y) ** 2)[None, :] <= r2
        ii, jj = np.nonzero(inside)
        cids.append(gx[ii] * side + gy[jj])
        nodes.append(np.full(len(ii), i, dtype=np.int64))
    hg = Hypergraph(n)
    if not cids:
        return hg
    cid = np.concatenate(cids)
    node = np.concatenate(nodes)
    order = np.lexsort((node, cid))
    cid, node = cid[order], node[order]
    starts = np.flatnonzero(np.r_[True, cid[1:] != cid[:-1]])
    ends = np.r_[starts[1:], len(cid)]
    keep = ends - starts >= 2
    node_list = node.tolist()
    seen = {}
    for s, e in zip(starts[keep].tolist(), ends[keep].tolist()):
        key = tuple(node_list[s:e])
        if key not in seen:
            seen[key] = None
    for key in seen:
        hg.add_edge(key, pair_mean_distance(coords[list(key)]))
    return hg


def random_geometric(p: GeoParams) -> tuple[Hypergraph, np.ndarray]:
    rng = np.random.default_rng(p.seed)
    coords = rng.uniform(0.0, p.a, size=(p.n, 2))
    return geometric_hypergraph(coords, p.a, p.r, p.h), coords


def corner_vertex(coords: np.ndarray) -> int:
    """Vertex closest to the (0, 0) corner by x + y."""
    coords = np.asarray(coords, dtype=float).reshape(-1, 2)
    if not len(coords):
        raise ValueError("no vertices")
    return int(np.argmin(coords.sum(axis=1)))


def write_coords(coords: np.ndarray, f: TextIO) -> None:
    for v, (x, y) in enumerate(np.asarray(coords, dtype=float).reshape(-1, 2)):
        f.write(f"{v} {x:.17g} {y:.17g}\n")


def read_coords(f: TextIO) -> np.ndarray:
    rows = []
    for line in f:
        if line.strip():
            v, x, y = line.split()
            if int(v) != len(rows):
                raise HypergraphError(f"coordinates out of order at vertex {v}")
            rows.append((float(x), float(y)))
    return np.array(rows, dtype=float).reshape(-1, 2)


class GeneratorError(RuntimeError):
    pass


@dataclass(frozen=True)
class ChangeModelParams:
    length: int = 10_000
    p_insert: float = 0.25
    p_delete: float = 0.25
    w_min: float = 10.0
    w_max: float = 20.0
    mode: str = "random"
    seed: int = 0
    integral: bool = False

    def __post_init__(self):
        if not (0 <= self.p_insert <= 1 and 0 <= self.p_delete <= 1
                and self.p_insert + self.p_delete <= 1 + 1e-12):
            raise ValueError("need p_insert, p_delete in [0, 1] with sum <= 1")
        if not 0 <= self.w_min <= self.w_max:
            raise ValueError("need 0 <= w_min <= w_max")
        if self.mode not in ("random", "targeted"):
            raise ValueError(f"unknown mode {self.mode!r}")


class _Pool:
    """Index-addressable set with O(1) add, remove and uniform choice."""

    def __init__(self, items=()):
        self.items: list[int] = []
        self.pos: dict[int, int] = {}
        for x in items:
            self.add(x)

    def __len__(self):
        return len(self.items)

    def add(self, x: int) -> None:
        if x not in self.pos:
            self.pos[x] = len(self.items)
            self.items.append(x)

    def remove(self, x: int) -> None:
        i = self.pos.pop(x)
        last = self.items.pop()
        if i < len(self.items):
            self.items[i] = last
            self.pos[last] = i

    def choice(self, rng: random.Random) -> int:
        return self.items[rng.randrange(len(self.items))]


class ChangeGenerator:
    """Draws change events against an evolving hypergraph.

    The generator assumes every emitted event is applied to ``h`` before the
    next draw.  Insertions revive a random deleted hyperedge with the weight it
    had when it was deleted; when nothing is deleted the kind is redrawn
    between deletion and weight change.  In targeted mode, deletions and weight
    changes hit a hyperedge chosen uniformly among those on the current
    shortest hyperpaths.
    """

    def __init__(self, params: ChangeModelParams, h: Hypergraph):
        self.params = params
        self.h = h
        self.rng = random.Random(params.seed)
        self.alive = _Pool(h.alive_edges())
        self.dead = _Pool(h.dead_edges())
        self.restore: dict[int, float] = {}

    def _weight(self) -> float:
        p = self.params
        if p.integral:
            return float(self.rng.randint(math.ceil(p.w_min), math.floor(p.w_max)))
        return self.rng.uniform(p.w_min, p.w_max)

    def _kind(self) -> str:
        p, rng = self.params, self.rng
        u = rng.random()
        if u < p.p_insert:
            kind = "ins"
        elif u < p.p_insert + p.p_delete:
            kind = "del"
        else:
            kind = "weight"
        if kind == "ins" and not self.dead:
            rest = 1.0 - p.p_insert
            share = p.p_delete / rest if rest > 0 else 0.5
            kind = "del" if rng.random() < share else "weight"
        if kind != "ins" and not self.alive:
            if not self.dead:
                raise GeneratorError("hypergraph has no hyperedges")
            kind = "ins"
        return kind

    def _target(self, state: Optional[SPState]) -> int:
        if self.params.mode == "targeted" and state is not None:
            on_paths = sorted({e for e in state.edge if e is not None})
            if on_paths:
                return on_paths[self.rng.randrange(len(on_paths))]
        return self.alive.choice(self.rng)

    def next_change(self, state: Optional[SPState] = None) -> ChangeEvent:
        kind = self._kind()
        if kind == "ins":
            e = self.dead.choice(self.rng)
            w = self.restore.pop(e, None)
            if w is None:
                w = self._weight()
            self.dead.remove(e)
            self.alive.add(e)
            return ChangeEvent.insert(e, w)
        e = self._target(state)
        cur = self.h.weights[e]
        if kind == "del":
            self.restore[e] = cur
            self.alive.remove(e)
            self.dead.add(e)
            return ChangeEvent.delete(e)
        for _ in range(1000):
            w = self._weight()
            if w != cur:
                break
        else:
            raise GeneratorError(f"cannot draw a weight different from {cur}")
        return ChangeEvent.increase(e, w) if w > cur else ChangeEvent.decrease(e, w)


def random_change_sequence(h: Hypergraph, params: ChangeModelParams) -> list[ChangeEvent]:
    """Pre-draw a random-mode sequence; ``h`` itself is left untouched."""
    if params.mode != "random":
        raise ValueError("targeted sequences depend on the evolving state; draw them online")
    work = h.copy()
    gen = ChangeGenerator(params, work)
    out = []
    for _ in range(params.length):
        c = gen.next_change()
        work.apply(c)
        out.append(c)
    return out


@dataclass(frozen=True)
class EmailEvent:
    timestamp: str
    sender: int
    recipients: frozenset

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.recipients | {self.sender}))


def parse_email_log(lines: Iterable[str], strict: bool = False) -> tuple[list[EmailEvent], list[str]]:
    """Read ``timestamp<TAB>sender<TAB>rcpt1,rcpt2,...`` lines.

    Returns the kept events in input order and the actor names indexed by
    id.  Self-addressed mails (no recipient besides the sender) are dropped.
    Malformed lines raise ``ValueError`` when ``strict``, else are logged
    and skipped.
    """
    actors: dict[str, int] = {}
    events = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3 or not fields[0].strip() or not fields[1].strip():
            msg = f"line {lineno}: expected timestamp<TAB>sender<TAB>recipients, got {line!r}"
            if strict:
                raise ValueError(msg)
            log.warning(msg)
            continue
        ts, sender = fields[0].strip(), fields[1].strip()
        rcpts = [r.strip() for r in fields[2].split(",")]
        rcpts = [r for r in rcpts if r and r != sender]
        if not rcpts:
            continue
        for name in [sender, *rcpts]:
            if name not in actors:
                actors[name] = len(actors)
        events.append(EmailEvent(ts, actors[sender], frozenset(actors[r] for r in rcpts)))
    return events, list(actors)


def email_weight(size: int, occurrence: int, alpha: float) -> float:
    """``sqrt(size) ** (alpha ** (occurrence - 1))``: heavier for bigger groups,
    lighter the more often the same group mails."""
    return math.sqrt(size) ** (alpha ** (occurrence - 1))


def emails_to_changes(
    events: Sequence[EmailEvent], alpha: float = 0.6, n: Optional[int] = None
) -> tuple[Hypergraph, list[ChangeEvent]]:
    """Turn a mail stream into an initially empty hypergraph plus its changes.

    Every distinct participant set is pre-registered as a dead hyperedge; its
    first mail inserts it and each later mail decreases its weight.  Repeats
    whose weight no longer drops in floating point emit nothing.
    """
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    if n is None:
        n = 1 + max((max(ev.vertices) for ev in events), default=-1)
    h = Hypergraph(n)
    ids: dict[tuple[int, ...], int] = {}
    seen: dict[int, int] = {}
    changes = []
    for ev in events:
        key = ev.vertices
        e = ids.get(key)
        if e is None:
            e = ids[key] = h.add_edge(key, INF, alive=False)
            seen[e] = 1
            changes.append(ChangeEvent.insert(e, email_weight(len(key), 1, alpha)))
            continue
        seen[e] += 1
        w = email_weight(len(key), seen[e], alpha)
        prev = email_weight(len(key), seen[e] - 1, alpha)
        if w < prev:
            changes.append(ChangeEvent.decrease(e, w))
    return h, changes


__all__ = [
    "ChangeGenerator", "ChangeKind", "ChangeModelParams", "EmailEvent", "GeneratorError",
    "GeoParams", "corner_vertex", "email_weight", "emails_to_changes", "geometric_hypergraph",
    "pair_mean_distance", "parse_email_log", "random_change_sequence", "random_geometric",
    "read_coords", "write_coords",
]
