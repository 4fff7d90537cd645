"""Dynamic shortest hyperpaths maintained directly on the hypergraph.

A weight decrease seeds a priority queue with the members of the changed
hyperedge that now improve through its closest member, then settles outward
Dijkstra-style, scanning every hyperedge incident to each settled vertex.

A weight increase first colors the possibly affected vertices: members whose
tree edge is the changed hyperedge, and then the children of every vertex
that cannot keep its distance.  A vertex with an equally short alternative
through a non-red neighbor turns pink and is re-parented; otherwise it turns
red.  Red vertices restart from their best non-red neighbor and are settled
like a decrease.
"""

from __future__ import annotations

from typing import Optional

from .core import INF
from .dynamic import PINK, RED, DynamicSolver, finish_increase
from .pqueue import AddressableHeap
from .statics import SPState, gallo_sssp


class HEDSP(DynamicSolver):
    name = "he"

    def _initial_state(self, source: int) -> SPState:
        return gallo_sssp(self.h, source, rng=self.rng)

    def decrease(self, e: int, w_new: Optional[float] = None) -> set[int]:
        tr = self._begin("decrease", e, w_new)
        h, st = self.h, self.state
        dist = st.dist
        vs = h.members[e]
        x = self._argmin(vs)
        if tr is not None:
            tr.argmin = x
        changed: set[int] = set()
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
                st.set_parent(v, x, e)
                q.push(v, nd)
                changed.add(v)
        self.counters.enqueues += len(q)
        self._settle(q, changed, {e})
        self.counters.affected = len(changed)
        return changed

    def increase(self, e: int, w_new: Optional[float] = None) -> set[int]:
        tr = self._begin("increase", e, w_new)
        h, st = self.h, self.state
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
            wit = self._witness(z, dz, colors, m)
            if wit is not None:
                colors[z] = PINK
                pinks += 1
                st.set_parent(z, wit[0], wit[1])
            else:
                colors[z] = RED
                red_old[z] = dz
                for ch in children[z]:
                    if ch not in colors:
                        m.push(ch, dist[ch])
                        c.enqueues += 1
        if tr is not None:
            tr.colors = colors

        q = AddressableHeap()
        for z in red_old:
            best = self._best_nonred(z, colors)
            if best is None:
                dist[z] = INF
                st.set_parent(z, None, None)
            else:
                d, u, f = best
                dist[z] = d
                st.set_parent(z, u, f)
                q.push(z, d)
                c.enqueues += 1
        self._settle(q, set())
        return finish_increase(st, red_old, pinks, c)

    def _witness(self, z, dz, colors, pending):
        """A non-red ``(q, f)`` with ``dist[q] + w(f) == dist[z]``, or None."""
        h = self.h
        dist = self.state.dist
        members, weights = h.members, h.weights
        cands = []
        scans = 0
        for f in h.incidence[z]:
            wf = weights[f]
            mem = members[f]
            scans += len(mem)
            for q in mem:
                dq = dist[q]
                if dq + wf == dz and q != z and colors.get(q) is not RED:
                    if dq == dz and not self._settled_chain(q, z, colors, pending):
                        continue
                    cands.append((q, f))
                    if self.rng is None:
                        self.counters.scans += scans
                        return cands[0]
        self.counters.scans += scans
        return self._pick(cands) if cands else None

    def _best_nonred(self, z, colors):
        h = self.h
        dist = self.state.dist
        members, weights = h.members, h.weights
        best = INF
        ties = []
        scans = 0
        for f in h.incidence[z]:
            wf = weights[f]
            mem = members[f]
            scans += len(mem)
            for u in mem:
                if u == z or colors.get(u) is RED:
                    continue
                d = dist[u] + wf
                if d < best:
                    best = d
                    ties = [(u, f)]
                elif d == best and d < INF:
                    ties.append((u, f))
        self.counters.scans += scans
        if not ties:
            return None
        u, f = self.rng.choice(ties) if self.rng is not None else min(ties)
        return best, u, f

    def _settle(self, q: AddressableHeap, changed: set[int], done: Optional[set] = None) -> None:
        """Dijkstra from the queued vertices with hyperedge-scan relaxation.

        Pops come out in nondecreasing distance, so a hyperedge relaxed once
        can't improve any member when reached again from a later pop; ``done``
        holds those (seeded with the changed hyperedge on a decrease).
        """
        h, st = self.h, self.state
        dist, parent, via, children = st.dist, st.parent, st.edge, st.children
        members, weights, incidence = h.members, h.weights, h.incidence
        rng = self.rng
        tr = self.last_trace
        pop, push = q.pop, q.push
        done = set() if done is None else done
        scans = enq = deq = 0
        while q:
            z, dz = pop()
            deq += 1
            if tr is not None:
                tr.q_pops.append(dz)
            for f in incidence[z]:
                if f in done:
                    continue
                done.add(f)
                nd = dz + weights[f]
                mem = members[f]
                scans += len(mem)
                for v in mem:
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
                        via[v] = f
                        children[z].add(v)
                        push(v, nd)
                        enq += 1
                        changed.add(v)
                    elif rng is not None and nd == dv and dz < dv and rng.random() < 0.5:
                        st.set_parent(v, z, f)
        c = self.counters
        c.scans += scans
        c.enqueues += enq
        c.dequeues += deq
