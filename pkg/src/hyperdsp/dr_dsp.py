"""Dynamic shortest hyperpaths maintained on the underlying graph.

Each hyperedge change is first pushed into the pair candidate queues, which
yields a batch of pair-weight changes that all go the same direction and all
lie inside the changed hyperedge.  Seeding is done from the hyperedge's
members exactly as in HE-DSP; the rest is the classic graph-level routine
running over the underlying adjacency instead of hyperedge scans.

``edge[v]`` is kept as a lightest hyperedge for the pair ``(parent[v], v)``
and refreshed from the candidate queue whenever the parent changes.
"""

from __future__ import annotations

from typing import Optional

from .core import INF
from .dynamic import PINK, RED, DynamicSolver, finish_increase
from .pqueue import AddressableHeap
from .statics import SPState, dr_sp
from .underlying import Delta, build_underlying


class DRDSP(DynamicSolver):
    name = "dr"

    def _initial_state(self, source: int) -> SPState:
        self.G = build_underlying(self.h)
        self.last_deltas: list[Delta] = []
        return dr_sp(self.h, source, g=self.G, rng=self.rng)

    def _graph_update(self, e: int) -> list[Delta]:
        deltas = self.G.update(self.h, e)
        k = len(self.h.members[e])
        self.counters.queue_updates += k * (k - 1) // 2
        self.last_deltas = deltas
        return deltas

    def decrease(self, e: int, w_new: Optional[float] = None) -> set[int]:
        tr = self._begin("decrease", e, w_new)
        changed: set[int] = set()
        if not self._graph_update(e):
            return changed
        h, st = self.h, self.state
        dist = st.dist
        vs = h.members[e]
        x = self._argmin(vs)
        if tr is not None:
            tr.argmin = x
        dx = dist[x]
        if dx == INF:
            return changed
        nd = dx + h.weights[e]
        q = AddressableHeap()
        for v in vs:
            if nd < dist[v]:
                if tr is not None:
                    tr.old_dist.setdefault(v, dist[v])
                    tr.enqueued.add(v)
                dist[v] = nd
                st.set_parent(v, x, None)
                q.push(v, nd)
                changed.add(v)
        self.counters.enqueues += len(q)
        moved = set(changed)
        self._settle(q, changed, moved)
        self._refresh_edges(moved)
        self.counters.affected = len(changed)
        return changed

    def increase(self, e: int, w_new: Optional[float] = None) -> set[int]:
        tr = self._begin("increase", e, w_new)
        self._graph_update(e)
        h, st, g = self.h, self.state, self.G
        dist, via, children = st.dist, st.edge, st.children
        c = self.counters

        m = AddressableHeap()
        for v in h.members[e]:
            if via[v] == e:
                m.push(v, dist[v])
        c.enqueues += len(m)

        colors: dict = {}
        red_old: dict[int, float] = {}
        pinks = 0
        while m:
            z, dz = m.pop()
            c.dequeues += 1
            if tr is not None:
                tr.m_pops.append(dz)
                tr.old_dist.setdefault(z, dz)
            q = self._witness(z, dz, colors, m)
            if q is not None:
                colors[z] = PINK
                pinks += 1
                st.set_parent(z, q, g.best_edge(q, z))
            else:
                colors[z] = RED
                red_old[z] = dz
                for ch in children[z]:
                    if ch not in colors:
                        m.push(ch, dist[ch])
                        c.enqueues += 1
        if tr is not None:
            tr.colors = colors

        pq = AddressableHeap()
        moved = set()
        for z in red_old:
            best = self._best_nonred(z, colors)
            moved.add(z)
            if best is None:
                dist[z] = INF
                st.set_parent(z, None, None)
            else:
                d, u = best
                dist[z] = d
                st.set_parent(z, u, None)
                pq.push(z, d)
                c.enqueues += 1
        self._settle(pq, set(), moved)
        self._refresh_edges(moved)
        return finish_increase(st, red_old, pinks, c)

    def _witness(self, z, dz, colors, pending) -> Optional[int]:
        dist = self.state.dist
        nbrs = self.G.adj[z]
        self.counters.scans += len(nbrs)
        cands = []
        for q, w in nbrs.items():
            dq = dist[q]
            if dq + w == dz and colors.get(q) is not RED:
                if dq == dz and not self._settled_chain(q, z, colors, pending):
                    continue
                if self.rng is None:
                    return q
                cands.append(q)
        return self._pick(cands) if cands else None

    def _best_nonred(self, z, colors):
        dist = self.state.dist
        nbrs = self.G.adj[z]
        self.counters.scans += len(nbrs)
        best = INF
        ties = []
        for u, w in nbrs.items():
            if colors.get(u) is RED:
                continue
            d = dist[u] + w
            if d < best:
                best = d
                ties = [u]
            elif d == best and d < INF:
                ties.append(u)
        if not ties:
            return None
        return best, (self.rng.choice(ties) if self.rng is not None else min(ties))

    def _settle(self, q: AddressableHeap, changed: set[int], moved: set[int]) -> None:
        """Graph-level Dijkstra from the queued vertices over the underlying adjacency."""
        st = self.state
        dist, parent, children = st.dist, st.parent, st.children
        adj = self.G.adj
        rng = self.rng
        tr = self.last_trace
        pop, push = q.pop, q.push
        scans = enq = deq = 0
        while q:
            z, dz = pop()
            deq += 1
            if tr is not None:
                tr.q_pops.append(dz)
            nbrs = adj[z]
            scans += len(nbrs)
            for v, w in nbrs.items():
                nd = dz + w
                dv = dist[v]
                if nd < dv:
                    if tr is not None and tr.kind == "decrease":
                        tr.old_dist.setdefault(v, dv)
                        tr.enqueued.add(v)
                    dist[v] = nd
                    old = parent[v]
                    if old is not None:
                        children[old].discard(v)
                    parent[v] = z
                    children[z].add(v)
                    push(v, nd)
                    enq += 1
                    changed.add(v)
                    moved.add(v)
                elif rng is not None and nd == dv and dz < dv and rng.random() < 0.5:
                    st.set_parent(v, z, None)
                    moved.add(v)
        c = self.counters
        c.scans += scans
        c.enqueues += enq
        c.dequeues += deq

    def _refresh_edges(self, moved) -> None:
        parent, via = self.state.parent, self.state.edge
        best_edge = self.G.best_edge
        for v in moved:
            p = parent[v]
            via[v] = None if p is None else best_edge(p, v)
