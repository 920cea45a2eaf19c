"""Vertex mover: single-vertex reassignment after agglomeration."""
from __future__ import annotations

from .graph import Graph
from .quality import EPS, Partition, vertex_move_gain


def vm_order(g: Graph) -> list[int]:
    """Vertices by ascending degree, then index."""
    return sorted(range(g.n), key=lambda v: (len(g.adj[v]), v))


def vm_refine(g: Graph, p: Partition, single_pass: bool = False) -> tuple[Partition, int]:
    """Move vertices to the neighbouring community with the best positive gain.

    Vertices are visited in :func:`vm_order`; ties between targets go to the
    lowest community id. Passes repeat until one makes no move, unless
    ``single_pass`` is set. Returns a new partition and the number of moves.
    """
    if g.edge_count == 0:
        return p.copy(), 0
    L = g.edge_count
    twoL2 = 2.0 * L * L
    a = list(p.assignment)
    cdeg = dict(p.degree)
    size: dict[int, int] = {}
    for c in a:
        size[c] = size.get(c, 0) + 1
    adj = g.adj
    order = vm_order(g)
    moves = 0
    while True:
        moved = 0
        for v in order:
            nb = adj[v]
            if not nb:
                continue
            src = a[v]
            links: dict[int, int] = {}
            for u in nb:
                c = a[u]
                links[c] = links.get(c, 0) + 1
            dv = len(nb)
            k_src = links.get(src, 0)
            d_src = cdeg[src]
            best_gain = EPS
            best = -1
            for t, k_t in links.items():
                if t == src:
                    continue
                gain = (k_t - k_src) / L - dv * (cdeg[t] - d_src + dv) / twoL2
                if gain > best_gain or (gain == best_gain and best != -1 and t < best):
                    best_gain = gain
                    best = t
            if best == -1:
                continue
            a[v] = best
            cdeg[src] -= dv
            cdeg[best] += dv
            size[best] += 1
            size[src] -= 1
            if size[src] == 0:
                del size[src]
                del cdeg[src]
            moved += 1
        moves += moved
        if moved == 0 or single_pass:
            break
    return Partition(g, a), moves


def is_locally_optimal(g: Graph, p: Partition, eps: float = EPS) -> bool:
    """True if no single vertex move into a neighbouring community gains more than ``eps``."""
    L = g.edge_count
    for v in range(g.n):
        links = p.links_of(v)
        src = p.assignment[v]
        for t, k in links.items():
            if t == src:
                continue
            gain = vertex_move_gain(k, links.get(src, 0), g.degree(v),
                                    p.degree[t], p.degree[src], L)
            if gain > eps:
                return False
    return True
