import itertools
import random

import numpy as np
import pytest

from msgvm import zachary
from msgvm.graph import Graph


def random_graph(n, p, seed):
    rng = random.Random(seed)
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


def connected_random_graph(n, p, seed):
    """Random graph plus a random spanning path, so it is connected."""
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = list(zip(order, order[1:]))
    edges += [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


def scratch_modularity(g, assignment):
    """Q = 1/(2L) sum_ij (A_ij - k_i k_j / 2L) [c_i == c_j], from the dense matrix."""
    n = g.n
    A = np.zeros((n, n))
    for u, v in g.edges():
        A[u, v] = A[v, u] = 1
    k = A.sum(axis=1)
    two_l = k.sum()
    c = np.asarray(assignment)
    same = c[:, None] == c[None, :]
    return float(((A - np.outer(k, k) / two_l) * same).sum() / two_l)


def set_partitions(n):
    """All set partitions of range(n) as restricted growth strings."""
    a = [0] * n

    def rec(i, m):
        if i == n:
            yield list(a)
            return
        for c in range(m + 1):
            a[i] = c
            yield from rec(i + 1, max(m, c + 1))

    if n == 0:
        yield []
        return
    yield from rec(1, 1)


def best_modularity(g):
    return max(scratch_modularity(g, a) for a in set_partitions(g.n))


def small_corpus(count=60, seed=2024):
    """Connected graphs on 4..8 vertices with varied density."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(4, 8)
        p = rng.choice([0.2, 0.35, 0.5, 0.7])
        g = connected_random_graph(n, p, rng.randrange(10 ** 9))
        out.append(g)
    return out


@pytest.fixture(scope="session")
def karate():
    return zachary()


@pytest.fixture
def single_edge():
    return Graph.from_edges(2, [(0, 1)], ["a", "b"])


@pytest.fixture
def two_triangles():
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])


# one line per acceptance criterion, printed after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
