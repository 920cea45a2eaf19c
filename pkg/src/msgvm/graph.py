"""Undirected simple graphs with dense integer vertices.

Vertices are ``0..n-1`` internally and carry an external string label.
Every transformation that renumbers vertices returns a :class:`VertexMapping`
so results can be reported against the original labels.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

import numpy as np

logger = logging.getLogger(__name__)


class EdgeListParseError(ValueError):
    """Raised for a malformed edge-list line."""

    def __init__(self, lineno: int, line: str):
        super().__init__(f"line {lineno}: expected two vertex tokens, got {line!r}")
        self.lineno = lineno


class Graph:
    """Immutable undirected simple graph.

    ``adj[v]`` is a sorted tuple of neighbours of ``v``. Build instances via
    :meth:`from_edges` or :func:`load_edge_list`; the constructor trusts its
    input.
    """

    __slots__ = ("adj", "labels", "edge_count", "_index")

    def __init__(self, adj: Sequence[Sequence[int]], labels: Sequence[str] | None = None):
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(a) for a in adj)
        n = len(self.adj)
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise ValueError("need one label per vertex")
        self.labels: tuple[str, ...] = tuple(labels)
        self.edge_count = sum(len(a) for a in self.adj) // 2
        self._index: dict[str, int] | None = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None) -> "Graph":
        """Build a graph, dropping self-loops and duplicate edges."""
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                continue
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls([sorted(s) for s in nbrs], labels)

    @property
    def vertex_count(self) -> int:
        return len(self.adj)

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def m(self) -> int:
        return self.edge_count

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        """Each undirected edge once, as ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u, a in enumerate(self.adj) for v in a if u < v]

    def index_of(self, label: str) -> int:
        if self._index is None:
            self._index = {lab: i for i, lab in enumerate(self.labels)}
        return self._index[label]

    def has_label(self, label: str) -> bool:
        if self._index is None:
            self._index = {lab: i for i, lab in enumerate(self.labels)}
        return label in self._index

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(_bfs(self, 0)) == self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adj == other.adj and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.adj, self.labels))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass
class VertexMapping:
    """Provenance of a vertex renumbering.

    ``forward`` maps surviving old indices to new ones; ``inverse[new]`` lists
    the old indices folded into ``new``. ``degenerate`` is set when a
    transformation collapsed the whole graph.
    """

    forward: dict[int, int]
    inverse: list[list[int]]
    degenerate: bool = False

    @classmethod
    def identity(cls, n: int) -> "VertexMapping":
        return cls({i: i for i in range(n)}, [[i] for i in range(n)])

    def then(self, other: "VertexMapping") -> "VertexMapping":
        """Compose: apply ``self`` first, then ``other``."""
        forward = {old: other.forward[mid] for old, mid in self.forward.items()
                   if mid in other.forward}
        inverse = [sorted(old for mid in olds for old in self.inverse[mid])
                   for olds in other.inverse]
        return VertexMapping(forward, inverse, self.degenerate or other.degenerate)


@dataclass
class LoadStats:
    self_loops: int = 0
    duplicates: int = 0
    lines: int = 0


def load_edge_list(stream: TextIO | Iterable[str], stats: LoadStats | None = None) -> Graph:
    """Parse a whitespace-separated edge list.

    Vertex tokens become dense indices in order of first appearance. Lines
    starting with ``#`` and blank lines are skipped. Self-loops and parallel
    edges are dropped; their counts are logged and stored in ``stats``.
    """
    if stats is None:
        stats = LoadStats()
    index: dict[str, int] = {}
    labels: list[str] = []
    edges: set[tuple[int, int]] = set()
    order: list[tuple[int, int]] = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(lineno, line)
        ids = []
        for tok in parts:
            i = index.get(tok)
            if i is None:
                i = index[tok] = len(labels)
                labels.append(tok)
            ids.append(i)
        stats.lines += 1
        u, v = ids
        if u == v:
            stats.self_loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in edges:
            stats.duplicates += 1
            continue
        edges.add(key)
        order.append(key)
    if stats.self_loops or stats.duplicates:
        logger.info("dropped %d self-loops and %d duplicate edges",
                    stats.self_loops, stats.duplicates)
    return Graph.from_edges(len(labels), order, labels)


def read_edge_list(path, stats: LoadStats | None = None) -> Graph:
    with open(path, encoding="utf-8") as f:
        return load_edge_list(f, stats)


def format_edge_list(g: Graph) -> str:
    """Serialize so that re-loading yields the same graph, numbering included.

    Lines introducing each vertex in index order come first, the remaining
    edges follow sorted. A vertex that cannot be introduced by one of its
    edges without disturbing the order (isolated vertices among them) gets a
    self-loop line, which the loader drops after registering the label.
    """
    lab = g.labels
    lines = []
    used: set[tuple[int, int]] = set()
    seen = [False] * g.n
    for k, nb in enumerate(g.adj):
        if seen[k]:
            continue
        seen[k] = True
        if nb and nb[0] < k:
            lines.append((nb[0], k))
        elif k + 1 in nb:
            lines.append((k, k + 1))
            seen[k + 1] = True
        else:
            lines.append((k, k))
            continue
        used.add(lines[-1])
    rest = [e for e in g.edges() if e not in used]
    return "".join(f"{lab[u]} {lab[v]}\n" for u, v in lines + rest)


def _bfs(g: Graph, start: int) -> list[int]:
    seen = {start}
    out = [start]
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if v not in seen:
                seen.add(v)
                out.append(v)
                queue.append(v)
    return out


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by smallest member."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = _bfs(g, s)
        for v in comp:
            seen[v] = True
        comps.append(sorted(comp))
    return comps


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> tuple[Graph, VertexMapping]:
    """Subgraph on ``vertices``; new indices follow the order given."""
    forward = {old: new for new, old in enumerate(vertices)}
    adj = [sorted(forward[u] for u in g.adj[old] if u in forward) for old in vertices]
    labels = [g.labels[old] for old in vertices]
    return Graph(adj, labels), VertexMapping(forward, [[old] for old in vertices])


def largest_connected_component(g: Graph) -> tuple[Graph, VertexMapping]:
    """Largest component; equal sizes resolve to the one with the smallest vertex."""
    if g.n == 0:
        return g, VertexMapping({}, [])
    comps = connected_components(g)
    best = max(comps, key=len)  # first maximal wins, comps are ordered by min index
    if len(best) == g.n:
        return g, VertexMapping.identity(g.n)
    return induced_subgraph(g, best)


def contract_chains(g: Graph) -> tuple[Graph, VertexMapping]:
    """Replace each chain of degree-1/2 vertices by one vertex.

    A chain is a maximal connected set of vertices of degree at most 2. The
    replacement vertex keeps the chain's edges to higher-degree vertices, so
    those vertices keep their degree. A chain whose two ends attach to the
    same vertex is a cycle through that vertex and is left intact. If the
    graph has no vertex of degree 3 or more, every component collapses to a
    single isolated vertex and the mapping is flagged ``degenerate``.
    """
    n = g.n
    low = [len(a) <= 2 for a in g.adj]
    group = list(range(n))  # representative old vertex for each vertex
    chains: list[list[int]] = []
    seen = [False] * n
    for s in range(n):
        if not low[s] or seen[s]:
            continue
        chain = [s]
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.adj[u]:
                if low[v] and not seen[v]:
                    seen[v] = True
                    chain.append(v)
                    queue.append(v)
        chain.sort()
        hubs = [v for u in chain for v in g.adj[u] if not low[v]]
        if len(chain) > 1 and len(hubs) != len(set(hubs)):
            continue
        chains.append(chain)
        for u in chain:
            group[u] = chain[0]

    # new vertices in order of their representative's old index
    reps = sorted(set(group))
    new_of_rep = {r: i for i, r in enumerate(reps)}
    forward = {v: new_of_rep[group[v]] for v in range(n)}
    inverse: list[list[int]] = [[] for _ in reps]
    for v in range(n):
        inverse[forward[v]].append(v)
    edges = ((forward[u], forward[v]) for u, v in g.edges())
    labels = [g.labels[r] for r in reps]
    out = Graph.from_edges(len(reps), edges, labels)
    degenerate = n > 0 and all(low)
    if degenerate:
        logger.warning("every vertex has degree <= 2; graph contracted to %d vertices", out.n)
    return out, VertexMapping(forward, inverse, degenerate)


def permute_labels(g: Graph, seed: int) -> tuple[Graph, VertexMapping]:
    """Uniformly random renumbering of the dense indices; labels travel along."""
    rng = np.random.default_rng(seed)
    perm = rng.permutation(g.n).tolist()  # old -> new
    inv = [0] * g.n
    for old, new in enumerate(perm):
        inv[new] = old
    adj = [sorted(perm[u] for u in g.adj[inv[new]]) for new in range(g.n)]
    labels = [g.labels[inv[new]] for new in range(g.n)]
    mapping = VertexMapping({old: new for old, new in enumerate(perm)},
                            [[inv[new]] for new in range(g.n)])
    return Graph(adj, labels), mapping
