"""Modularity and the incremental gains used by every optimizer.

For a partition with intra-community edge counts ``I(c)`` and degree sums
``d(c)`` on a graph with ``L`` edges::

    Q = sum_c I(c)/L - (d(c) / 2L)**2

Merging communities ``i`` and ``j`` joined by ``w`` edges changes ``Q`` by
``w/L - d(i) d(j) / (2 L**2)``.
"""
from __future__ import annotations

import copy
from collections import Counter
from typing import Iterable, Sequence

from .graph import Graph

#: Positivity threshold for gains; masks floating-point round-off.
EPS = 1e-12


class Partition:
    """Vertex to community assignment with cached per-community sums.

    ``internal[c]`` counts edges with both endpoints in ``c`` (each once) and
    ``degree[c]`` sums the degrees of its members. Both dicts only hold ids of
    non-empty communities.
    """

    __slots__ = ("graph", "assignment", "internal", "degree")

    def __init__(self, graph: Graph, assignment: Sequence[int]):
        if len(assignment) != graph.n:
            raise ValueError(f"assignment covers {len(assignment)} vertices, graph has {graph.n}")
        self.graph = graph
        self.assignment = list(assignment)
        self.internal: dict[int, int] = {}
        self.degree: dict[int, int] = {}
        self._recount()

    def _recount(self) -> None:
        internal: dict[int, int] = {}
        degree: dict[int, int] = {}
        a = self.assignment
        for v, nb in enumerate(self.graph.adj):
            c = a[v]
            degree[c] = degree.get(c, 0) + len(nb)
            internal.setdefault(c, 0)
            for u in nb:
                if u > v and a[u] == c:
                    internal[c] += 1
        self.internal = internal
        self.degree = degree

    @classmethod
    def singletons(cls, graph: Graph) -> "Partition":
        return cls(graph, range(graph.n))

    @classmethod
    def whole(cls, graph: Graph) -> "Partition":
        return cls(graph, [0] * graph.n)

    @classmethod
    def from_groups(cls, graph: Graph, groups: Iterable[Iterable[int]]) -> "Partition":
        a = [-1] * graph.n
        for c, members in enumerate(groups):
            for v in members:
                a[v] = c
        if -1 in a:
            raise ValueError("groups do not cover every vertex")
        return cls(graph, a)

    @property
    def community_count(self) -> int:
        return len(self.degree)

    def communities(self) -> list[int]:
        return sorted(self.degree)

    def members(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.assignment):
            out.setdefault(c, []).append(v)
        return out

    def groups(self) -> list[list[int]]:
        """Member lists ordered by community id."""
        m = self.members()
        return [m[c] for c in sorted(m)]

    def normalized(self) -> "Partition":
        """Same grouping with ids renumbered 0.. in order of first vertex."""
        ids: dict[int, int] = {}
        return Partition(self.graph, [ids.setdefault(c, len(ids)) for c in self.assignment])

    def copy(self) -> "Partition":
        return copy.copy(self)

    def __copy__(self) -> "Partition":
        p = Partition.__new__(Partition)
        p.graph = self.graph
        p.assignment = list(self.assignment)
        p.internal = dict(self.internal)
        p.degree = dict(self.degree)
        return p

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.graph is other.graph and self.assignment == other.assignment

    def __repr__(self) -> str:
        return f"Partition(n={len(self.assignment)}, communities={self.community_count})"

    def edges_between(self, i: int, j: int) -> int:
        a = self.assignment
        return sum(1 for v, nb in enumerate(self.graph.adj) if a[v] == i
                   for u in nb if a[u] == j)

    def links_of(self, v: int) -> Counter:
        """Edge counts from ``v`` to each community among its neighbours."""
        a = self.assignment
        return Counter(a[u] for u in self.graph.adj[v])

    # -- incremental updates -------------------------------------------------

    def apply_merge(self, i: int, j: int) -> "Partition":
        """Merge communities ``i`` and ``j`` in place; ``min(i, j)`` survives."""
        _check_pair(self, i, j)
        keep, gone = min(i, j), max(i, j)
        w = self.edges_between(keep, gone)
        a = self.assignment
        for v, c in enumerate(a):
            if c == gone:
                a[v] = keep
        self.internal[keep] += self.internal.pop(gone) + w
        self.degree[keep] += self.degree.pop(gone)
        return self

    def apply_move(self, v: int, target: int) -> "Partition":
        """Reassign vertex ``v`` to ``target`` in place, deleting an emptied source."""
        if target not in self.degree:
            raise ValueError(f"unknown community {target}")
        src = self.assignment[v]
        if src == target:
            return self
        links = self.links_of(v)
        dv = self.graph.degree(v)
        self.internal[src] -= links.get(src, 0)
        self.degree[src] -= dv
        self.internal[target] += links.get(target, 0)
        self.degree[target] += dv
        self.assignment[v] = target
        if self.degree[src] == 0 and src not in self.assignment:
            del self.degree[src]
            del self.internal[src]
        return self


def _check_pair(p: Partition, i: int, j: int) -> None:
    if i == j:
        raise ValueError("cannot merge a community with itself")
    for c in (i, j):
        if c not in p.degree:
            raise ValueError(f"unknown community {c}")


def modularity(g: Graph, p: Partition | Sequence[int]) -> float:
    """Modularity recomputed from scratch."""
    L = g.edge_count
    if L == 0:
        raise ValueError("modularity is undefined for a graph without edges")
    a = p.assignment if isinstance(p, Partition) else list(p)
    if len(a) != g.n:
        raise ValueError("partition does not cover the graph")
    internal: Counter = Counter()
    degree: Counter = Counter()
    for v, nb in enumerate(g.adj):
        c = a[v]
        degree[c] += len(nb)
        for u in nb:
            if u > v and a[u] == c:
                internal[c] += 1
    two_l = 2.0 * L
    return sum(internal[c] / L - (d / two_l) ** 2 for c, d in degree.items())


def quick_modularity(p: Partition) -> float:
    """Modularity from the partition's cached sums."""
    L = p.graph.edge_count
    if L == 0:
        raise ValueError("modularity is undefined for a graph without edges")
    two_l = 2.0 * L
    return sum(p.internal[c] / L - (d / two_l) ** 2 for c, d in p.degree.items())


def pair_gain(w: int, di: int, dj: int, L: int) -> float:
    """Gain of merging two communities linked by ``w`` edges."""
    return w / L - di * dj / (2.0 * L * L)


def merge_gain(g: Graph, p: Partition, i: int, j: int) -> float:
    _check_pair(p, i, j)
    return pair_gain(p.edges_between(i, j), p.degree[i], p.degree[j], g.edge_count)


def vertex_move_gain(k_target: int, k_source: int, dv: int,
                     d_target: int, d_source: int, L: int) -> float:
    """Gain of moving a vertex of degree ``dv`` from source to target.

    ``k_*`` are the vertex's edge counts into each community and ``d_source``
    still includes the vertex itself.
    """
    return (k_target - k_source) / L - dv * (d_target - d_source + dv) / (2.0 * L * L)


def move_gain(g: Graph, p: Partition, v: int, target: int) -> float:
    if target not in p.degree:
        raise ValueError(f"unknown community {target}")
    src = p.assignment[v]
    if src == target:
        return 0.0
    links = p.links_of(v)
    return vertex_move_gain(links.get(target, 0), links.get(src, 0), g.degree(v),
                            p.degree[target], p.degree[src], g.edge_count)


def apply_merge(p: Partition, i: int, j: int) -> Partition:
    """Return a new partition with ``i`` and ``j`` merged."""
    return p.copy().apply_merge(i, j)


def apply_move(p: Partition, v: int, target: int) -> Partition:
    """Return a new partition with ``v`` moved to ``target``."""
    return p.copy().apply_move(v, target)
