import random

import pytest
from hypothesis import given, settings, strategies as st

from msgvm.graph import Graph
from msgvm.quality import (Partition, apply_merge, apply_move, merge_gain, modularity,
                           move_gain, quick_modularity)

from conftest import connected_random_graph, random_graph, scratch_modularity


def test_one_community_is_zero(karate):
    assert modularity(karate, Partition.whole(karate)) == pytest.approx(0.0, abs=1e-15)


def test_single_edge_singletons(single_edge):
    assert modularity(single_edge, Partition.singletons(single_edge)) == -0.5


def test_triangle_split():
    g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert modularity(g, [0, 0, 1]) == pytest.approx(1 / 3 - (4 / 6) ** 2 - (2 / 6) ** 2)
    assert modularity(g, [0, 0, 1]) == pytest.approx(-2 / 9)


def test_empty_graph_is_domain_error():
    with pytest.raises(ValueError):
        modularity(Graph.from_edges(3, []), [0, 1, 2])


def test_merge_gain_single_edge(single_edge):
    p = Partition.singletons(single_edge)
    assert merge_gain(single_edge, p, 0, 1) == 0.5


def test_merge_gain_unconnected_pair(karate):
    p = Partition.singletons(karate)
    i = 0
    j = next(v for v in range(1, karate.n) if v not in karate.adj[i])
    expect = -karate.degree(i) * karate.degree(j) / (2 * 78 ** 2)
    assert merge_gain(karate, p, i, j) == pytest.approx(expect)
    assert merge_gain(karate, p, i, j) < 0


def test_merge_gain_same_id_rejected(karate):
    with pytest.raises(ValueError):
        merge_gain(karate, Partition.singletons(karate), 3, 3)


def test_move_gain_noop_and_single_edge(single_edge):
    p = Partition.singletons(single_edge)
    assert move_gain(single_edge, p, 0, 0) == 0.0
    assert move_gain(single_edge, p, 0, 1) == 0.5


def test_move_gain_unknown_target(single_edge):
    with pytest.raises(ValueError):
        move_gain(single_edge, Partition.singletons(single_edge), 0, 5)


def test_singleton_formula(karate):
    L = karate.m
    expect = -sum((d / (2 * L)) ** 2 for d in karate.degrees())
    assert modularity(karate, Partition.singletons(karate)) == pytest.approx(expect, abs=1e-15)


def assert_consistent(p):
    fresh = Partition(p.graph, p.assignment)
    assert p.internal == fresh.internal
    assert p.degree == fresh.degree
    assert p.community_count == len(set(p.assignment))
    assert sum(p.degree.values()) == 2 * p.graph.m


def random_partition(g, k, rng):
    return Partition(g, [rng.randrange(k) for _ in range(g.n)])


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_merge_gain_matches_recompute(seed):
    rng = random.Random(seed)
    g = random_graph(50, 0.08, seed)
    if g.m == 0:
        return
    p = random_partition(g, 8, rng)
    ids = p.communities()
    if len(ids) < 2:
        return
    i, j = rng.sample(ids, 2)
    before = scratch_modularity(g, p.assignment)
    after = scratch_modularity(g, apply_merge(p, i, j).assignment)
    assert abs(merge_gain(g, p, i, j) - (after - before)) <= 1e-10
    assert merge_gain(g, p, i, j) == pytest.approx(merge_gain(g, p, j, i), abs=1e-15)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_move_gain_matches_recompute(seed):
    rng = random.Random(seed)
    g = random_graph(50, 0.08, seed)
    if g.m == 0:
        return
    p = random_partition(g, 6, rng)
    v = rng.randrange(g.n)
    t = rng.choice(p.communities())
    before = scratch_modularity(g, p.assignment)
    after = scratch_modularity(g, apply_move(p, v, t).assignment)
    assert abs(move_gain(g, p, v, t) - (after - before)) <= 1e-10


def test_merge_keeps_min_id_and_counts(karate):
    p = Partition(karate, [v % 2 for v in range(karate.n)])
    q = apply_merge(p, 1, 0)
    assert q.community_count == 1
    assert set(q.assignment) == {0}
    assert p.community_count == 2  # original untouched


def test_move_of_sole_member_deletes_source(single_edge):
    p = Partition.singletons(single_edge)
    q = apply_move(p, 0, 1)
    assert q.communities() == [1]
    assert_consistent(q)


def test_incremental_tracking_100_steps():
    rng = random.Random(5)
    g = connected_random_graph(30, 0.12, 5)
    p = random_partition(g, 10, rng)
    q = modularity(g, p)
    for _ in range(100):
        if rng.random() < 0.3 and p.community_count > 1:
            i, j = rng.sample(p.communities(), 2)
            q += merge_gain(g, p, i, j)
            p.apply_merge(i, j)
        else:
            v = rng.randrange(g.n)
            t = rng.choice(p.communities())
            q += move_gain(g, p, v, t)
            p.apply_move(v, t)
        assert_consistent(p)
        assert abs(q - scratch_modularity(g, p.assignment)) <= 1e-10
        assert abs(quick_modularity(p) - modularity(g, p)) <= 1e-12


def test_from_groups_and_normalized(two_triangles):
    p = Partition.from_groups(two_triangles, [[3, 4, 5], [0, 1, 2]])
    assert p.assignment == [1, 1, 1, 0, 0, 0]
    assert p.normalized().assignment == [0, 0, 0, 1, 1, 1]
    assert p.internal == {0: 3, 1: 3}
