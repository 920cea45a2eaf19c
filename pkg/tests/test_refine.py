import random

import pytest
from hypothesis import given, settings, strategies as st

from msgvm.agglomerative import greedy_run, msg_run
from msgvm.quality import EPS, Partition, modularity, move_gain
from msgvm.refine import is_locally_optimal, vm_order, vm_refine

from conftest import connected_random_graph, random_graph


def exhaustive_single_move_ok(g, p):
    """Scan every vertex against every community, not just neighbouring ones."""
    for v in range(g.n):
        for t in p.communities():
            if move_gain(g, p, v, t) > EPS:
                return False
    return True


def test_single_edge(single_edge):
    p, moves = vm_refine(single_edge, Partition.singletons(single_edge))
    assert moves == 1
    assert p.community_count == 1
    assert modularity(single_edge, p) == 0.0


def test_fixpoint_unchanged(two_triangles):
    p = Partition(two_triangles, [0, 0, 0, 3, 3, 3])
    out, moves = vm_refine(two_triangles, p)
    assert moves == 0
    assert out == p


def test_order_by_degree_then_index(karate):
    order = vm_order(karate)
    keys = [(karate.degree(v), v) for v in order]
    assert keys == sorted(keys)


def test_zachary_after_msg(karate):
    run = msg_run(karate, 3)
    q0 = modularity(karate, run.partition)
    p, moves = vm_refine(karate, run.partition)
    assert moves > 0
    assert modularity(karate, p) > q0
    assert modularity(karate, p) == pytest.approx(0.398, abs=5e-4)


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 40), st.floats(0.05, 0.4), st.integers(0, 10 ** 6), st.integers(1, 8))
def test_monotone_and_locally_optimal(n, prob, seed, k):
    g = random_graph(n, prob, seed)
    if g.m == 0:
        return
    rng = random.Random(seed)
    p = Partition(g, [rng.randrange(k) for _ in range(n)])
    q0 = modularity(g, p)
    out, moves = vm_refine(g, p)
    q1 = modularity(g, out)
    assert q1 >= q0 - 1e-12
    assert (q1 > q0) == (moves > 0) or abs(q1 - q0) < 1e-12
    assert is_locally_optimal(g, out)
    assert exhaustive_single_move_ok(g, out)
    assert vm_refine(g, p)[0] == out


def test_single_pass_flag():
    g = connected_random_graph(60, 0.08, 4)
    start = greedy_run(g).partition
    rng = random.Random(0)
    scrambled = Partition(g, [rng.choice(start.communities()) for _ in range(g.n)])
    one, m1 = vm_refine(g, scrambled, single_pass=True)
    full, m2 = vm_refine(g, scrambled)
    assert m2 >= m1
    assert modularity(g, full) >= modularity(g, one) - 1e-12
    assert modularity(g, one) >= modularity(g, scrambled)


def test_input_not_mutated(karate):
    p = Partition.singletons(karate)
    before = list(p.assignment)
    vm_refine(karate, p)
    assert p.assignment == before
