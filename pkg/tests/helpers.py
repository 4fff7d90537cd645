"""Instance builders shared by the test modules."""

import random

from hyperdsp import Hypergraph

# The four-hyperedge example used throughout: vertices v1..v9 are ids 0..8.
H1_EDGES = [
    (0, 1, 2, 5),   # e1
    (1, 2, 3, 4),   # e2
    (5, 6, 7, 8),   # e3
    (4, 7, 8),      # e4
]
E1, E2, E3, E4 = range(4)


def v(i: int) -> int:
    """1-based vertex label to id."""
    return i - 1


def h1(weights=(1, 1, 1, 1)) -> Hypergraph:
    return Hypergraph(9, [(vs, float(w)) for vs, w in zip(H1_EDGES, weights)])


def random_hypergraph(rng: random.Random, n: int, m: int, w_lo=1, w_hi=20,
                      max_size=None, integral=True, dead_frac=0.0) -> Hypergraph:
    """``m`` random hyperedges of size 1..max_size over ``n`` vertices."""
    max_size = max_size or min(n, 5)
    h = Hypergraph(n)
    for _ in range(m):
        k = rng.randint(1, max_size)
        vs = rng.sample(range(n), k)
        w = float(rng.randint(w_lo, w_hi)) if integral else rng.uniform(w_lo, w_hi)
        h.add_edge(vs, w, alive=rng.random() >= dead_frac)
    return h


def lemma_violations(trace, before, after) -> list:
    """Check one event's trace against the correctness lemmas.

    (a) a decrease enqueues exactly the vertices whose distance strictly drops;
    (b) dequeue distances never go down, in Q and in M;
    (c) the closest member of the decreased hyperedge keeps its distance;
    (d) pink vertices keep their distance, red ones strictly increase.
    """
    out = []
    for name, pops in (("Q", trace.q_pops), ("M", trace.m_pops)):
        if any(b < a for a, b in zip(pops, pops[1:])):
            out.append(f"(b) {name} dequeues not monotone: {pops}")
    if trace.kind == "decrease":
        improved = {u for u in range(len(before)) if after[u] < before[u]}
        if trace.enqueued != improved:
            out.append(f"(a) enqueued {sorted(trace.enqueued)} != improved {sorted(improved)}")
        x = trace.argmin
        if x is not None and after[x] != before[x]:
            out.append(f"(c) argmin {x} moved {before[x]} -> {after[x]}")
    else:
        from hyperdsp import Color
        for u, c in trace.colors.items():
            if c is Color.PINK and after[u] != before[u]:
                out.append(f"(d) pink {u} moved {before[u]} -> {after[u]}")
            if c is Color.RED and not after[u] > before[u]:
                out.append(f"(d) red {u} did not increase ({before[u]} -> {after[u]})")
    return out


REPORT: list[str] = []


def report(criterion: int, ok: bool, detail: str) -> None:
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}"
    REPORT.append(line)
    print(line)
