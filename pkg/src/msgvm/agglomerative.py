"""Agglomerative modularity optimization: classic greedy and multistep greedy.

Both start from singletons and merge edge-connected community pairs with
positive gain. ``greedy_run`` merges the single best pair per iteration.
``msg_run`` merges, per iteration, every pair whose gain is among the ``l``
largest distinct positive values, skipping pairs with a community already
changed in the same iteration.

Pair gains live in a binary heap keyed ``(-gain, i, j)`` with lazy deletion:
each entry records the version of both communities when it was pushed and a
popped entry is discarded unless both versions are still current.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import NamedTuple

from .graph import Graph
from .quality import EPS, Partition


@dataclass
class Dendrogram:
    """Merge history: ``(iteration, kept_id, absorbed_id, delta_q)`` rows."""

    n: int
    merges: list[tuple[int, int, int, float]] = field(default_factory=list)
    depth: int = 0

    def replay(self, upto: int | None = None) -> list[int]:
        """Community assignment after the first ``upto`` merges (all by default)."""
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for _, keep, gone, _ in self.merges[:upto]:
            parent[find(gone)] = find(keep)
        return [find(v) for v in range(self.n)]

    def tree_height(self) -> int:
        """Height of the merge tree, recomputed from the merge list."""
        h = [0] * self.n
        for _, keep, gone, _ in self.merges:
            h[keep] = max(h[keep], h[gone]) + 1
        return max(h, default=0)

    def iterations(self) -> int:
        return self.merges[-1][0] if self.merges else 0


class RunResult(NamedTuple):
    partition: Partition
    dendrogram: Dendrogram
    trace: list[float]


class MergeState:
    """Live community adjacency, degree sums and the gain heap."""

    def __init__(self, g: Graph):
        L = g.edge_count
        if L == 0:
            raise ValueError("graph has no edges")
        self.graph = g
        self.L = L
        self.nbrs: list[dict[int, int] | None] = [dict.fromkeys(a, 1) for a in g.adj]
        self.deg = [len(a) for a in g.adj]
        self.ver = [0] * g.n
        self.height = [0] * g.n
        self.live_pairs = L
        self.dendrogram = Dendrogram(g.n)
        two_l = 2.0 * L
        self.q = -sum((d / two_l) ** 2 for d in self.deg)
        self.trace: list[float] = []
        twoL2 = 2.0 * L * L
        deg = self.deg
        heap = [(-(1 / L - deg[u] * deg[v] / twoL2), u, v, 0, 0) for u, v in g.edges()]
        heapq.heapify(heap)
        self.heap = heap

    def gain(self, i: int, j: int) -> float:
        L = self.L
        return self.nbrs[i][j] / L - self.deg[i] * self.deg[j] / (2.0 * L * L)

    def pop_valid(self):
        """Pop stale entries off the top; return the current top entry or None."""
        heap, ver = self.heap, self.ver
        while heap:
            e = heap[0]
            if ver[e[1]] == e[3] and ver[e[2]] == e[4]:
                return e
            heapq.heappop(heap)
        return None

    def merge(self, i: int, j: int, gain: float, iteration: int) -> int:
        keep, gone = (i, j) if i < j else (j, i)
        nbrs, deg, ver = self.nbrs, self.deg, self.ver
        nk = nbrs[keep]
        ng = nbrs[gone]
        del nk[gone]
        del ng[keep]
        self.live_pairs -= 1
        for m, x in ng.items():
            nm = nbrs[m]
            del nm[gone]
            if keep in nm:
                nm[keep] += x
                nk[m] += x
                self.live_pairs -= 1
            else:
                nm[keep] = x
                nk[m] = x
        nbrs[gone] = None
        deg[keep] += deg[gone]
        ver[keep] += 1
        ver[gone] = -1
        self.height[keep] = max(self.height[keep], self.height[gone]) + 1

        L = self.L
        twoL2 = 2.0 * L * L
        dk = deg[keep]
        vk = ver[keep]
        heap = self.heap
        push = heapq.heappush
        for m, x in nk.items():
            g = -(x / L - dk * deg[m] / twoL2)
            if keep < m:
                push(heap, (g, keep, m, vk, ver[m]))
            else:
                push(heap, (g, m, keep, ver[m], vk))
        if len(heap) > 4 * self.live_pairs + 1024:
            self._compact()

        self.q += gain
        self.trace.append(self.q)
        self.dendrogram.merges.append((iteration, keep, gone, gain))
        return keep

    def _compact(self) -> None:
        ver = self.ver
        self.heap = [e for e in self.heap if ver[e[1]] == e[3] and ver[e[2]] == e[4]]
        heapq.heapify(self.heap)

    def result(self) -> RunResult:
        d = self.dendrogram
        d.depth = max(self.height, default=0)
        return RunResult(Partition(self.graph, d.replay()), d, self.trace)


def greedy_run(g: Graph) -> RunResult:
    """Merge the single best pair until no merge raises modularity by more than EPS.

    Ties go to the lexicographically smallest ``(i, j)``.
    """
    st = MergeState(g)
    it = 0
    while True:
        e = st.pop_valid()
        if e is None or -e[0] <= EPS:
            break
        heapq.heappop(st.heap)
        it += 1
        st.merge(e[1], e[2], -e[0], it)
    return st.result()


def msg_run(g: Graph, l: int) -> RunResult:
    """Multistep greedy with step width ``l``.

    Each iteration freezes the ``l`` largest distinct positive gains, then
    walks all pairs at or above the smallest of them in order of decreasing
    gain and increasing ``(i, j)``, merging a pair only if neither community
    has been merged earlier in the iteration.
    """
    if l < 1:
        raise ValueError(f"step width must be >= 1, got {l}")
    st = MergeState(g)
    heap, ver = st.heap, st.ver
    pop = heapq.heappop
    it = 0
    while True:
        cands = []
        distinct = 0
        last = None
        heap = st.heap
        while heap:
            e = heap[0]
            if ver[e[1]] != e[3] or ver[e[2]] != e[4]:
                pop(heap)
                continue
            ng = e[0]
            if -ng <= EPS:
                break
            if ng != last:
                if distinct == l:
                    break
                distinct += 1
                last = ng
            cands.append(pop(heap))
        if not cands:
            break
        it += 1
        touched = set()
        for ng, i, j, vi, vj in cands:
            if i in touched or j in touched:
                continue
            touched.add(i)
            touched.add(j)
            st.merge(i, j, -ng, it)
    return st.result()
