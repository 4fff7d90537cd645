import random

import pytest
from hypothesis import given, settings, strategies as st

from hyperdsp import DRDSP, HEDSP, INF, ChangeEvent, Color, Hypergraph, HypergraphError, \
    InvalidChange, build_underlying, certify, dr_sp
from hyperdsp.genio import ChangeGenerator, ChangeModelParams

from helpers import E1, E2, E3, E4, h1, lemma_violations, random_hypergraph, v

SOLVERS = [HEDSP, DRDSP]
H1_D = [0, 1, 1, 2, 2, 1, 2, 2, 2]


def d_of(solver, *labels):
    return [solver.state.dist[v(i)] for i in labels]


@pytest.mark.parametrize("cls", SOLVERS)
def test_decrease_e3(cls):
    s = cls(h1(), v(1), trace=True)
    changed = s.apply(ChangeEvent.decrease(E3, 0.4))
    assert d_of(s, 7, 8, 9) == [1.4, 1.4, 1.4]
    assert s.state.dist[v(5)] == 2
    assert changed == {v(7), v(8), v(9)}
    assert s.last_trace.argmin == v(6)
    assert certify(s.h, s.state).ok


@pytest.mark.parametrize("cls", SOLVERS)
def test_decrease_e2(cls):
    s = cls(h1(), v(1))
    assert s.apply(ChangeEvent.decrease(E2, 0.1)) == {v(4), v(5)}
    assert d_of(s, 4, 5) == [1.1, 1.1]
    assert d_of(s, 2, 3) == [1, 1]


@pytest.mark.parametrize("cls", SOLVERS)
def test_decrease_unreachable_edge(cls):
    h = Hypergraph(4, [((0, 1), 1), ((2, 3), 5)])
    s = cls(h, 0)
    assert s.apply(ChangeEvent.decrease(1, 1)) == set()
    assert s.state.dist == [0, 1, INF, INF]


@pytest.mark.parametrize("cls", SOLVERS)
def test_decrease_e4_no_effect(cls):
    s = cls(h1(), v(1))
    assert s.apply(ChangeEvent.decrease(E4, 0.2)) == set()
    assert s.state.dist == H1_D


def test_dr_shadowed_decrease_skips_work():
    h = Hypergraph(3, [((0, 1, 2), 1.0), ((1, 2), 9.0)])
    s = DRDSP(h, 0)
    assert s.apply(ChangeEvent.decrease(1, 5.0)) == set()
    assert s.last_deltas == [] and s.counters.scans == 0 and s.counters.enqueues == 0


@pytest.mark.parametrize("cls", SOLVERS)
def test_increase_e1(cls):
    s = cls(h1(), v(1), trace=True)
    changed = s.apply(ChangeEvent.increase(E1, 5))
    assert s.state.dist == [0, 5, 5, 6, 6, 5, 6, 6, 6]
    assert changed == set(range(1, 9))
    colors = s.last_trace.colors
    assert set(colors) == set(range(1, 9)) and set(colors.values()) == {Color.RED}


@pytest.mark.parametrize("cls", SOLVERS)
def test_increase_e2(cls):
    s = cls(h1(), v(1), trace=True)
    s.apply(ChangeEvent.increase(E2, 3))
    assert d_of(s, 5, 4) == [3, 4]
    tr = s.last_trace
    assert set(tr.colors) == {v(4), v(5)}
    assert tr.colors[v(5)] is Color.RED and tr.colors[v(4)] is Color.RED


@pytest.mark.parametrize("cls", SOLVERS)
def test_increase_off_tree(cls):
    s = cls(h1(), v(1), trace=True)
    assert s.apply(ChangeEvent.increase(E4, 7)) == set()
    assert s.last_trace.colors == {} and s.counters.dequeues == 0
    assert s.state.dist == H1_D


@pytest.mark.parametrize("cls", SOLVERS)
def test_increase_with_equal_alternative_is_pink(cls):
    # v2 hangs off e1; e2 offers the same distance through v1
    h = Hypergraph(3, [((0, 1), 1.0), ((0, 1, 2), 1.0), ((1, 2), 1.0)])
    s = cls(h, 0, trace=True)
    tree_edge = s.state.edge[1]
    other = 1 - tree_edge
    changed = s.apply(ChangeEvent.increase(tree_edge, 4))
    assert changed == set() and s.state.dist == [0, 1, 1]
    assert s.last_trace.colors[1] is Color.PINK
    assert s.state.edge[1] == other and s.counters.reparented >= 1
    assert certify(s.h, s.state).ok


def test_dr_shadowed_increase_switches_edge():
    h = Hypergraph(2, [((0, 1), 1.0), ((0, 1), 1.0)])
    s = DRDSP(h, 0)
    assert s.state.edge[1] == 0
    s.apply(ChangeEvent.increase(0, 3))
    assert s.last_deltas == [] and s.state.edge[1] == 1 and s.state.dist == [0, 1]


@pytest.mark.parametrize("cls", SOLVERS)
def test_delete_and_reinsert(cls):
    s = cls(h1(), v(1))
    s.apply(ChangeEvent.delete(E3))
    assert s.state.dist[v(7)] == INF
    assert d_of(s, 8, 9) == [3, 3]
    assert s.state.parent[v(7)] is None and s.state.edge[v(7)] is None
    s.apply(ChangeEvent.insert(E3, 1))
    assert s.state.dist == H1_D
    assert certify(s.h, s.state).ok


@pytest.mark.parametrize("cls", SOLVERS)
def test_rejected_change_leaves_state(cls):
    s = cls(h1(), v(1))
    before = s.state.copy()
    for bad in (ChangeEvent.decrease(E1, 1), ChangeEvent.insert(E1, 1), ChangeEvent.increase(11, 2)):
        with pytest.raises(InvalidChange):
            s.apply(bad)
    assert s.state == before and s.h.weights == [1, 1, 1, 1]


@pytest.mark.parametrize("cls", SOLVERS)
def test_direct_call_checks_weight(cls):
    s = cls(h1(), v(1))
    with pytest.raises(HypergraphError):
        s.decrease(E1, 0.5)


@pytest.mark.parametrize("cls", SOLVERS)
def test_counters(cls):
    s = cls(h1(), v(1))
    s.apply(ChangeEvent.increase(E1, 5))
    c = s.counters
    assert c.affected == 8 and c.delta >= 8 and c.scans > 0 and c.dequeues > 0
    if cls is DRDSP:
        assert c.queue_updates == 6
    else:
        assert c.queue_updates == 0


# ---------------------------------------------------------------- randomized

def _run(h, source, changes_seed, mode, cls, steps, lo, hi, rng=None, trace=False):
    """Yield (solver, change, dist before) after every event."""
    s = cls(h, source, rng=rng, trace=trace)
    gen = ChangeGenerator(ChangeModelParams(length=steps, mode=mode, seed=changes_seed,
                                            w_min=lo, w_max=hi, integral=True), h)
    for _ in range(steps):
        c = gen.next_change(s.state)
        before = list(s.state.dist)
        s.apply(c)
        yield s, c, before


@pytest.mark.parametrize("seed", range(15))
@pytest.mark.parametrize("mode", ["random", "targeted"])
def test_matches_recompute_with_zero_weights(seed, mode):
    rng = random.Random(seed)
    h0 = random_hypergraph(rng, 15, 30, 0, 2)
    for cls in SOLVERS:
        for s, c, _ in _run(h0.copy(), 0, seed, mode, cls, 120, 0, 2):
            assert s.state.dist == dr_sp(s.h, 0).dist, c
            assert certify(s.h, s.state).ok, c


@pytest.mark.parametrize("seed", range(10))
def test_lemmas_positive_weights(seed):
    rng = random.Random(seed)
    h0 = random_hypergraph(rng, 20, 40, 1, 4)
    for cls in SOLVERS:
        for s, c, before in _run(h0.copy(), 0, seed, "targeted", cls, 150, 1, 4, trace=True):
            assert lemma_violations(s.last_trace, before, s.state.dist) == [], c


@pytest.mark.parametrize("seed", range(10))
def test_parity_and_affected_sets(seed):
    rng = random.Random(seed)
    h0 = random_hypergraph(rng, 20, 40, 1, 5)
    he, dr = HEDSP(h0.copy(), 0), DRDSP(h0.copy(), 0)
    gen = ChangeGenerator(ChangeModelParams(mode="random", seed=seed, w_min=1, w_max=5, integral=True), he.h)
    for _ in range(200):
        c = gen.next_change()
        a, b = he.apply(c), dr.apply(c)
        assert a == b and he.state.dist == dr.state.dist
        assert he.counters.affected == dr.counters.affected == len(a)


@pytest.mark.parametrize("seed", range(10))
def test_randomized_tie_breaking_keeps_distances(seed):
    rng = random.Random(seed)
    h0 = random_hypergraph(rng, 20, 40, 1, 3)
    for cls in SOLVERS:
        plain = cls(h0.copy(), 0)
        other = cls(h0.copy(), 0, rng=random.Random(seed + 1000))
        gen = ChangeGenerator(ChangeModelParams(mode="random", seed=seed, w_min=1, w_max=3, integral=True), plain.h)
        for _ in range(150):
            c = gen.next_change()
            plain.apply(c)
            other.apply(c)
            assert plain.state.dist == other.state.dist
            assert certify(other.h, other.state).ok


@pytest.mark.parametrize("seed", range(8))
def test_dr_graph_tracks_rebuild(seed):
    rng = random.Random(seed)
    h0 = random_hypergraph(rng, 12, 25, 1, 6)
    for s, c, _ in _run(h0, 0, seed, "random", DRDSP, 150, 1, 6):
        assert s.G.snapshot() == build_underlying(s.h).snapshot(), c
        for u, p, e in zip(range(s.h.n), s.state.parent, s.state.edge):
            if p is not None:
                assert s.h.weights[e] == s.G.weight(p, u)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_property_any_sequence(data):
    n = data.draw(st.integers(1, 7))
    edges = data.draw(st.lists(st.tuples(st.sets(st.integers(0, n - 1), min_size=1, max_size=4),
                                         st.integers(0, 4)), min_size=1, max_size=8))
    h = Hypergraph(n, edges)
    src = data.draw(st.integers(0, n - 1))
    solvers = [HEDSP(h.copy(), src), DRDSP(h.copy(), src)]
    for _ in range(data.draw(st.integers(1, 25))):
        e = data.draw(st.integers(0, h.m - 1))
        w = data.draw(st.integers(0, 4))
        if not h.alive[e]:
            c = ChangeEvent.insert(e, w)
        elif data.draw(st.booleans()):
            c = ChangeEvent.delete(e)
        elif w != h.weights[e]:
            c = ChangeEvent.increase(e, w) if w > h.weights[e] else ChangeEvent.decrease(e, w)
        else:
            continue
        h.apply(c)
        ref = dr_sp(h, src).dist
        for s in solvers:
            s.apply(c)
            assert s.state.dist == ref
            assert certify(s.h, s.state).ok
