"""Closeness centrality over shortest hyperpaths."""

from __future__ import annotations

import math
from typing import Hashable, Mapping, NamedTuple, Optional

from .core import INF, Hypergraph, HypergraphError
from .statics import SPState, dr_sp
from .underlying import UnderlyingGraph, build_underlying


class Closeness(NamedTuple):
    vertex: int
    total: float
    reachable: int


def closeness(h: Hypergraph, v: int, g: Optional[UnderlyingGraph] = None) -> tuple[float, int]:
    """Total shortest-hyperpath weight from ``v`` to every vertex it reaches, and how many."""
    if not 0 <= v < h.n:
        raise HypergraphError(f"vertex {v} outside 0..{h.n - 1}")
    st = dr_sp(h, v, g=g)
    total = 0.0
    count = 0
    for u, d in enumerate(st.dist):
        if u != v and d < INF:
            total += d
            count += 1
    return total, count


def most_important_actor(h: Hypergraph) -> list[Closeness]:
    """All vertices ranked by reachable count (desc), then total (asc), then id.

    The underlying graph is built once and shared by every source.
    """
    g = build_underlying(h)
    rows = [Closeness(v, *closeness(h, v, g)) for v in range(h.n)]
    rows.sort(key=lambda r: (-r.reachable, r.total, r.vertex))
    return rows


class GroupDistance(NamedTuple):
    label: Hashable
    mean: Optional[float]
    count: int


def distance_profile(st: SPState, groups: Mapping[int, Hashable]) -> dict[Hashable, GroupDistance]:
    """Mean finite distance from the source per label; ``mean`` is None for
    labels with no reachable member."""
    sums: dict = {}
    for v, label in groups.items():
        if not 0 <= v < st.n:
            raise HypergraphError(f"vertex {v} outside 0..{st.n - 1}")
        acc = sums.setdefault(label, [])
        d = st.dist[v]
        if d < INF:
            acc.append(d)
    return {
        label: GroupDistance(label, math.fsum(ds) / len(ds) if ds else None, len(ds))
        for label, ds in sums.items()
    }
