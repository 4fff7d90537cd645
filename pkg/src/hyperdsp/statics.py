"""Static single-source shortest hyperpaths.

Two independent solvers produce an :class:`SPState`:

* :func:`gallo_sssp` runs Dijkstra directly on the hypergraph, relaxing every
  member of every hyperedge incident to the settled vertex;
* :func:`dr_sp` runs Dijkstra on the underlying graph, whose pair weights are
  minima over containing hyperedges.

Both always produce equal distance vectors.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Optional, Sequence

from .core import INF, Hypergraph, HypergraphError
from .pqueue import AddressableHeap
from .underlying import UnderlyingGraph, build_underlying


@dataclass
class SPState:
    """Distances and relationship tree rooted at ``source``.

    ``parent[v]`` and ``edge[v]`` give the predecessor of ``v`` and the
    hyperedge holding both; ``children`` is the exact inverse of ``parent``.
    """

    source: int
    dist: list[float]
    parent: list[Optional[int]]
    edge: list[Optional[int]]
    children: list[set[int]] = field(default_factory=list)

    @classmethod
    def empty(cls, n: int, source: int) -> "SPState":
        if not 0 <= source < n:
            raise HypergraphError(f"source {source} outside 0..{n - 1}")
        dist = [INF] * n
        dist[source] = 0.0
        return cls(source, dist, [None] * n, [None] * n, [set() for _ in range(n)])

    @property
    def n(self) -> int:
        return len(self.dist)

    def rebuild_children(self) -> None:
        self.children = [set() for _ in range(self.n)]
        for v, p in enumerate(self.parent):
            if p is not None:
                self.children[p].add(v)

    def set_parent(self, v: int, p: Optional[int], e: Optional[int]) -> None:
        old = self.parent[v]
        if old is not None:
            self.children[old].discard(v)
        self.parent[v] = p
        self.edge[v] = e
        if p is not None:
            self.children[p].add(v)

    def reachable(self) -> list[int]:
        return [v for v, d in enumerate(self.dist) if d < INF]

    def copy(self) -> "SPState":
        return SPState(
            self.source, list(self.dist), list(self.parent), list(self.edge),
            [set(c) for c in self.children],
        )

    def dump(self) -> list[str]:
        """``v dist parent edge`` lines; ``-`` marks a missing parent or edge."""
        out = []
        for v in range(self.n):
            p, e = self.parent[v], self.edge[v]
            d = self.dist[v]
            out.append(
                f"{v} {'inf' if d == INF else f'{d:.17g}'} "
                f"{'-' if p is None else p} {'-' if e is None else e}"
            )
        return out


def gallo_sssp(h: Hypergraph, source: int, rng: Optional[random.Random] = None) -> SPState:
    """Dijkstra with hyperedge-scan relaxation; each hyperedge is relaxed
    once, from the first of its members to be settled.

    With ``rng`` set, equal-distance relaxations through positive-weight
    hyperedges switch parent with probability 1/2 to draw a different
    relationship tree.
    """
    st = SPState.empty(h.n, source)
    dist, parent, via = st.dist, st.parent, st.edge
    members, weights, incidence = h.members, h.weights, h.incidence
    done = [False] * h.n
    relaxed = [False] * h.m
    heap = [(0.0, source)]
    while heap:
        dz, z = heapq.heappop(heap)
        if done[z]:
            continue
        done[z] = True
        for e in incidence[z]:
            if relaxed[e]:
                continue
            relaxed[e] = True
            w = weights[e]
            nd = dz + w
            for v in members[e]:
                dv = dist[v]
                if nd < dv:
                    dist[v] = nd
                    parent[v] = z
                    via[v] = e
                    heapq.heappush(heap, (nd, v))
                elif nd == dv and rng is not None and w > 0 and rng.random() < 0.5:
                    parent[v] = z
                    via[v] = e
    st.rebuild_children()
    return st


def dr_sp(
    h: Hypergraph,
    source: int,
    g: Optional[UnderlyingGraph] = None,
    rng: Optional[random.Random] = None,
) -> SPState:
    """Dijkstra on the underlying graph; ``edge[v]`` is the pair's lightest hyperedge."""
    if g is None:
        g = build_underlying(h)
    st = SPState.empty(h.n, source)
    dist, parent = st.dist, st.parent
    adj = g.adj
    done = [False] * h.n
    relaxed = [False] * h.m
    heap = [(0.0, source)]
    while heap:
        dz, z = heapq.heappop(heap)
        if done[z]:
            continue
        done[z] = True
        for v, w in adj[z].items():
            nd = dz + w
            dv = dist[v]
            if nd < dv:
                dist[v] = nd
                parent[v] = z
                heapq.heappush(heap, (nd, v))
            elif nd == dv and rng is not None and w > 0 and rng.random() < 0.5:
                parent[v] = z
    for v, p in enumerate(parent):
        if p is not None:
            st.edge[v] = g.best_edge(p, v)
    st.rebuild_children()
    return st


def extract_hyperpath(st: SPState, v: int, h: Optional[Hypergraph] = None) -> list[int]:
    """Hyperedge sequence from the source to ``v`` read off the relationship tree.

    Consecutive repeats are collapsed.  When ``h`` is given, hyperedges between
    two overlapping non-adjacent members are cut out, which can only happen
    around zero-weight hyperedges and never raises the weight.
    """
    if st.dist[v] == INF:
        raise HypergraphError(f"vertex {v} is unreachable from {st.source}")
    path = []
    u = v
    for _ in range(st.n):
        if u == st.source:
            break
        e = st.edge[u]
        if not path or path[-1] != e:
            path.append(e)
        u = st.parent[u]
    else:
        raise HypergraphError(f"parent chain from {v} does not reach the source")
    path.reverse()
    if h is not None:
        path = _shortcut(h, path)
    return path


def _shortcut(h: Hypergraph, path: list[int]) -> list[int]:
    sets = [set(h.members[e]) for e in path]
    i = 0
    while i < len(path):
        for j in range(len(path) - 1, i + 1, -1):
            if not sets[i].isdisjoint(sets[j]):
                del path[i + 1:j]
                del sets[i + 1:j]
                break
        i += 1
    return path


@dataclass(frozen=True)
class Facet:
    vertices: tuple[int, ...]
    weight: float

    def __post_init__(self):
        if not self.vertices:
            raise HypergraphError("facet must be nonempty")
        object.__setattr__(self, "vertices", tuple(sorted(set(self.vertices))))


class SimplicialGraph(UnderlyingGraph):
    """Underlying graph of a simplicial complex.

    Candidate queue items are facet indices; ``face_visits[i]`` counts the
    face comparisons spent on facet ``i``.
    """

    def __init__(self, n: int):
        super().__init__(n)
        self.face_visits: list[int] = []


@lru_cache(maxsize=None)
def _masks_by_size(k: int) -> tuple[tuple[int, ...], ...]:
    out = [[] for _ in range(k + 1)]
    for size in range(k + 1):
        for combo in combinations(range(k), size):
            mask = 0
            for i in combo:
                mask |= 1 << i
            out[size].append(mask)
    return tuple(tuple(m) for m in out)


def build_underlying_simplicial(facets: Sequence[Facet], n: int) -> SimplicialGraph:
    """Pair weights of the complex generated by ``facets``, computed top-down.

    Faces without an explicit weight take the minimum over their one-higher
    cofaces inside the facet, so each ``i``-face costs ``d - i`` comparisons
    instead of a full scan of all containing faces.
    """
    explicit: dict[tuple[int, ...], float] = {}
    for f in facets:
        if f.vertices[0] < 0 or f.vertices[-1] >= n:
            raise HypergraphError(f"facet {f.vertices} has a vertex outside 0..{n - 1}")
        explicit[f.vertices] = min(explicit.get(f.vertices, INF), float(f.weight))
    explicit_sizes = {len(vs) for vs in explicit}

    g = SimplicialGraph(n)
    for idx, f in enumerate(facets):
        vs = f.vertices
        k = len(vs)
        visits = 0
        if k >= 2:
            masks = _masks_by_size(k)
            wg = {masks[k][0]: float(f.weight)}
            for size in range(k, 2, -1):
                for mask in masks[size]:
                    wm = wg[mask]
                    bits = mask
                    while bits:
                        low = bits & -bits
                        bits ^= low
                        sub = mask ^ low
                        visits += 1
                        cur = wg.get(sub)
                        if cur is None:
                            cur = INF
                            if size - 1 in explicit_sizes:
                                key = tuple(vs[i] for i in range(k) if sub >> i & 1)
                                cur = explicit.get(key, INF)
                        wg[sub] = wm if wm < cur else cur
            for mask in masks[2]:
                i = (mask & -mask).bit_length() - 1
                j = mask.bit_length() - 1
                key = (vs[i], vs[j])
                q = g.queues.get(key)
                if q is None:
                    q = g.queues[key] = AddressableHeap()
                q.push(idx, wg[mask])
        g.face_visits.append(visits)
    for (u, v), q in g.queues.items():
        w = q.peek()[1]
        g.adj[u][v] = w
        g.adj[v][u] = w
    return g


def expand_complex(facets: Sequence[Facet], n: int) -> Hypergraph:
    """Every nonempty face as its own hyperedge, weighted by its lightest explicit coface."""
    faces: dict[tuple[int, ...], float] = {}
    for f in facets:
        vs = f.vertices
        for size in range(1, len(vs) + 1):
            for sub in combinations(vs, size):
                w = faces.get(sub, INF)
                if f.weight < w:
                    faces[sub] = float(f.weight)
    return Hypergraph(n, sorted(faces.items()))
