import random

import pytest

from hyperdsp import Hypergraph, HypergraphError, closeness, distance_profile, dr_sp, \
    enumerate_distances, most_important_actor

from helpers import h1, random_hypergraph, v


def test_h1_closeness(H1):
    assert closeness(H1, v(1)) == (13, 8)
    assert closeness(H1, v(5)) == (11, 8)


def test_isolated_vertex():
    assert closeness(Hypergraph(3, [((1, 2), 1)]), 0) == (0, 0)
    with pytest.raises(HypergraphError):
        closeness(Hypergraph(3), 3)


def test_h1_ranking(H1):
    ranking = most_important_actor(H1)
    pos = {r.vertex: i for i, r in enumerate(ranking)}
    assert pos[v(5)] < pos[v(1)]
    totals = [r.total for r in ranking]
    assert totals == sorted(totals)


def test_hub_ranks_first():
    hub = 0
    h = Hypergraph(7, [((hub, 1, 2), 1), ((hub, 3, 4), 1), ((hub, 5, 6), 1)])
    assert most_important_actor(h)[0].vertex == hub


def test_symmetric_tie_lower_id():
    h = Hypergraph(2, [((0, 1), 3)])
    assert [r.vertex for r in most_important_actor(h)] == [0, 1]


def test_reachability_dominates():
    # vertex 3 is close to 4 only; vertex 0 reaches more even though it is farther
    h = Hypergraph(5, [((0, 1), 9), ((1, 2), 9), ((3, 4), 1)])
    assert [r.vertex for r in most_important_actor(h)][:3] == [1, 0, 2]


def test_distance_profile(H1):
    st = dr_sp(H1, v(1))
    prof = distance_profile(st, {v(2): "near", v(3): "near", v(4): "far", v(5): "far"})
    assert prof["near"].mean == 1.0 and prof["far"].mean == 2.0
    assert prof["near"].count == 2
    everything = distance_profile(st, {u: "all" for u in range(9)})
    assert everything["all"].mean == pytest.approx(13 / 9)


def test_profile_unreachable_label_is_empty():
    h = Hypergraph(3, [((0, 1), 2)])
    prof = distance_profile(dr_sp(h, 0), {1: "x", 2: "lost"})
    assert prof["lost"].mean is None and prof["lost"].count == 0
    with pytest.raises(HypergraphError):
        distance_profile(dr_sp(h, 0), {7: "x"})


@pytest.mark.parametrize("seed", range(10))
def test_totals_match_enumeration(seed):
    rng = random.Random(seed)
    h = random_hypergraph(rng, 7, 9, 1, 9)
    for u in range(h.n):
        ds = [d for w, d in enumerate(enumerate_distances(h, u)) if w != u and d < float("inf")]
        assert closeness(h, u) == (sum(ds), len(ds))


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("c", [0.5, 3.0, 8.0])
def test_scaling_keeps_ranking(seed, c):
    rng = random.Random(seed)
    h = random_hypergraph(rng, 15, 20, 1, 9)
    scaled = h.copy()
    scaled.weights = [w * c for w in h.weights]
    base, other = most_important_actor(h), most_important_actor(scaled)
    assert [r.vertex for r in base] == [r.vertex for r in other]
    for a, b in zip(base, other):
        assert b.total == pytest.approx(c * a.total, rel=1e-12)
