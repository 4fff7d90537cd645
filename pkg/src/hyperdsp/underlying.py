"""Dimension-reduced underlying graph of a hypergraph.

Every vertex pair ``(u, v)`` that co-occurs in an alive hyperedge becomes an
edge whose weight is the minimum weight over all alive hyperedges holding
both endpoints.  A candidate queue per pair keeps that minimum current as
hyperedges change, so a single hyperedge update only touches the pairs
inside it.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple, Optional

from .core import INF, Hypergraph, HypergraphError, format_weight
from .pqueue import AddressableHeap


class Delta(NamedTuple):
    pair: tuple[int, int]
    old: float
    new: float


class UnderlyingGraph:
    """Adjacency map plus one :class:`AddressableHeap` per co-occurring pair.

    ``adj[u][v]`` is the current edge weight; ``queues[(u, v)]`` (``u < v``)
    holds hyperedge ids keyed by their weights.  Queues are created on first
    co-occurrence and dropped once empty.
    """

    def __init__(self, n: int):
        self.n = n
        self.adj: list[dict[int, float]] = [{} for _ in range(n)]
        self.queues: dict[tuple[int, int], AddressableHeap] = {}

    def weight(self, u: int, v: int) -> float:
        return self.adj[u].get(v, INF)

    def best_edge(self, u: int, v: int) -> Optional[int]:
        """Lowest-id hyperedge of minimum weight containing both ``u`` and ``v``."""
        q = self.queues.get((u, v) if u < v else (v, u))
        if q is None:
            return None
        top = q.peek()
        return None if top is None else top[0]

    def edges(self) -> Iterator[tuple[int, int, float]]:
        for u, nbrs in enumerate(self.adj):
            for v, w in nbrs.items():
                if u < v:
                    yield u, v, w

    def snapshot(self) -> dict[tuple[int, int], float]:
        return {(u, v): w for u, v, w in self.edges()}

    def update(self, h: Hypergraph, e: int) -> list[Delta]:
        """Push hyperedge ``e``'s current weight (or removal) into its pair queues.

        ``h`` must already hold the new state of ``e``.  Returns one
        :class:`Delta` per pair whose minimum changed.
        """
        if not 0 <= e < h.m:
            raise HypergraphError(f"unknown hyperedge {e}")
        vs = h.members[e]
        alive = h.alive[e]
        w = h.weights[e]
        queues, adj = self.queues, self.adj
        deltas = []
        k = len(vs)
        for i in range(k - 1):
            u = vs[i]
            adj_u = adj[u]
            for j in range(i + 1, k):
                v = vs[j]
                key = (u, v)
                q = queues.get(key)
                if q is None:
                    if not alive:
                        continue
                    q = queues[key] = AddressableHeap()
                old = adj_u.get(v, INF)
                if alive:
                    q.push(e, w)
                else:
                    q.discard(e)
                top = q.peek()
                if top is None:
                    del queues[key]
                    new = INF
                else:
                    new = top[1]
                if new != old:
                    if new == INF:
                        del adj_u[v]
                        del adj[v][u]
                    else:
                        adj_u[v] = new
                        adj[v][u] = new
                    deltas.append(Delta(key, old, new))
        return deltas

    def dump(self) -> list[str]:
        """One ``u v weight queue_size`` line per edge, sorted by pair."""
        return [
            f"{u} {v} {format_weight(w)} {len(self.queues[(u, v)])}"
            for (u, v), w in sorted(self.snapshot().items())
        ]


def build_underlying(h: Hypergraph) -> UnderlyingGraph:
    g = UnderlyingGraph(h.n)
    for e, vs in enumerate(h.members):
        if not h.alive[e]:
            continue
        w = h.weights[e]
        k = len(vs)
        for i in range(k - 1):
            u = vs[i]
            for j in range(i + 1, k):
                key = (u, vs[j])
                q = g.queues.get(key)
                if q is None:
                    q = g.queues[key] = AddressableHeap()
                q.push(e, w)
    for (u, v), q in g.queues.items():
        w = q.peek()[1]
        g.adj[u][v] = w
        g.adj[v][u] = w
    return g


def graph_update(g: UnderlyingGraph, h: Hypergraph, e: int, w_new: float = None) -> list[Delta]:
    if w_new is not None and w_new != h.weights[e]:
        raise HypergraphError(f"hypergraph holds weight {h.weights[e]} for {e}, not {w_new}")
    return g.update(h, e)
