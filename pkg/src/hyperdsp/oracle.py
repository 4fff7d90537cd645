"""Ground truth for small instances and validity certificates for any state."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import INF, Hypergraph, HypergraphError
from .statics import SPState, dr_sp


def _masks(h: Hypergraph) -> list[int]:
    out = []
    for vs in h.members:
        m = 0
        for v in vs:
            m |= 1 << v
        out.append(m)
    return out


def enumerate_shortest(h: Hypergraph, u: int, v: int) -> float:
    """Minimum weight over all simple hyperpaths from ``u`` to ``v`` by exhaustive search.

    Exponential in the number of hyperedges; meant for instances with at most
    a dozen or so.
    """
    for x in (u, v):
        if not 0 <= x < h.n:
            raise HypergraphError(f"vertex {x} outside 0..{h.n - 1}")
    if u == v:
        return 0.0
    return _search(h, _masks(h), u, v)


def enumerate_distances(h: Hypergraph, s: int) -> list[float]:
    masks = _masks(h)
    return [0.0 if v == s else _search(h, masks, s, v) for v in range(h.n)]


def _search(h: Hypergraph, masks: list[int], u: int, v: int) -> float:
    """Depth-first over simple hyperedge sequences starting at ``u``.

    A candidate must meet the last hyperedge and miss every earlier one.
    Sequences stop at the first hyperedge holding ``v``; any prefix already
    as heavy as the best complete path is cut.
    """
    alive = [e for e in range(h.m) if h.alive[e]]
    weights = h.weights
    vbit = 1 << v
    best = INF

    def extend(last: int, earlier: int, w: float) -> None:
        nonlocal best
        lm = masks[last]
        if lm & vbit:
            best = min(best, w)
            return
        for f in alive:
            fm = masks[f]
            if f == last or not fm & lm or fm & earlier:
                continue
            wf = w + weights[f]
            if wf < best:
                extend(f, earlier | lm, wf)

    ubit = 1 << u
    for e in alive:
        if masks[e] & ubit and weights[e] < best:
            extend(e, 0, weights[e])
    return best


def recompute(h: Hypergraph, s: int) -> SPState:
    return dr_sp(h, s)


@dataclass(frozen=True)
class Violation:
    kind: str
    vertex: int
    edge: Optional[int] = None
    other: Optional[int] = None
    detail: str = ""


@dataclass
class Certificate:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def __str__(self) -> str:
        if self.ok:
            return "certificate: ok"
        lines = [f"certificate: {len(self.violations)} violation(s)"]
        lines += [f"  {v.kind} v={v.vertex} e={v.edge} other={v.other} {v.detail}"
                  for v in self.violations]
        return "\n".join(lines)


def certify(h: Hypergraph, st: SPState) -> Certificate:
    """Check every structural invariant of ``st`` plus the no-relaxation condition.

    Violations are returned, not raised.  Kinds: ``source``, ``tree``,
    ``unreachable``, ``children``, ``cycle`` and ``relax`` (a hyperedge ``e``
    containing ``u`` and ``v`` with ``dist[v] > dist[u] + w(e)``).
    """
    out: list[Violation] = []
    n = h.n
    s = st.source
    dist, parent, via = st.dist, st.parent, st.edge
    if len(dist) != n:
        return Certificate([Violation("size", -1, detail=f"{len(dist)} != {n}")])

    if dist[s] != 0 or parent[s] is not None or via[s] is not None:
        out.append(Violation("source", s, via[s], parent[s], f"dist={dist[s]}"))

    for v in range(n):
        if v == s:
            continue
        p, e = parent[v], via[v]
        if dist[v] == INF:
            if p is not None or e is not None:
                out.append(Violation("unreachable", v, e, p))
            continue
        if p is None or e is None or not 0 <= e < h.m or not 0 <= p < n:
            out.append(Violation("tree", v, e, p, "missing or invalid parent/edge"))
            continue
        vs = h.members[e]
        if not h.alive[e] or v not in vs or p not in vs:
            out.append(Violation("tree", v, e, p, "edge dead or not holding both ends"))
        elif dist[v] != dist[p] + h.weights[e]:
            out.append(Violation("tree", v, e, p, f"{dist[v]} != {dist[p]} + {h.weights[e]}"))

    expected = [set() for _ in range(n)]
    for v, p in enumerate(parent):
        if p is not None and 0 <= p < n:
            expected[p].add(v)
    if len(st.children) != n:
        out.append(Violation("children", -1, detail="children list has wrong length"))
    else:
        for v in range(n):
            if st.children[v] != expected[v]:
                out.append(Violation("children", v, detail=f"{sorted(st.children[v])} != {sorted(expected[v])}"))

    for v in range(n):
        u = v
        for _ in range(n + 1):
            if u is None or u == s or not 0 <= u < n:
                break
            u = parent[u]
        else:
            out.append(Violation("cycle", v, detail="parent chain does not terminate"))

    for e, vs in enumerate(h.members):
        if not h.alive[e]:
            continue
        u = min(vs, key=lambda x: dist[x])
        bound = dist[u] + h.weights[e]
        for v in vs:
            if dist[v] > bound:
                out.append(Violation("relax", v, e, u, f"{dist[v]} > {dist[u]} + {h.weights[e]}"))
    return Certificate(out)
