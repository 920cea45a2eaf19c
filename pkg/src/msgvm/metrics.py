"""Partition scores beyond modularity."""
from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .graph import Graph, VertexMapping
from .quality import Partition

logger = logging.getLogger(__name__)


@dataclass
class PathwayAnnotation:
    """Pathway labels per vertex label. Unlisted vertices belong to no pathway."""

    pathways: dict[str, frozenset[str]] = field(default_factory=dict)

    def vertex_sets(self, g: Graph) -> list[frozenset[str]]:
        """Pathway set for each vertex of ``g``; labels not in ``g`` are logged."""
        missing = [lab for lab in self.pathways if not g.has_label(lab)]
        if missing:
            logger.warning("%d annotated labels not in graph, e.g. %s",
                           len(missing), missing[:5])
        empty: frozenset[str] = frozenset()
        return [self.pathways.get(lab, empty) for lab in g.labels]

    def unresolved(self, g: Graph) -> list[str]:
        return sorted(lab for lab in self.pathways if not g.has_label(lab))

    def project(self, original: Graph, mapping: VertexMapping, target: Graph) -> "PathwayAnnotation":
        """Carry annotations through a renumbering; merged vertices take the union."""
        out: dict[str, frozenset[str]] = {}
        for new, olds in enumerate(mapping.inverse):
            s: set[str] = set()
            for old in olds:
                s |= self.pathways.get(original.labels[old], frozenset())
            if s:
                out[target.labels[new]] = frozenset(s)
        return PathwayAnnotation(out)


def pathway_score(p: Partition, ann: PathwayAnnotation | Sequence[frozenset[str]]) -> float:
    """Fraction of same-community vertex pairs sharing at least one pathway.

    Pairs are pooled over all communities before dividing; an all-singleton
    partition scores 0.
    """
    sets = ann.vertex_sets(p.graph) if isinstance(ann, PathwayAnnotation) else list(ann)
    bit: dict[str, int] = {}
    masks = []
    for s in sets:
        m = 0
        for name in s:
            m |= 1 << bit.setdefault(name, len(bit))
        masks.append(m)
    shared = total = 0
    for members in p.members().values():
        k = len(members)
        total += k * (k - 1) // 2
        counts = sorted(Counter(masks[v] for v in members).items())
        for x, (mx, cx) in enumerate(counts):
            if mx:
                shared += cx * (cx - 1) // 2
            for my, cy in counts[x + 1:]:
                if mx & my:
                    shared += cx * cy
    return shared / total if total else 0.0


def _labels(x: Partition | Sequence[int]) -> list[int]:
    return list(x.assignment) if isinstance(x, Partition) else list(x)


def _entropy(counts, n: int) -> float:
    return -sum(c / n * math.log(c / n) for c in counts)


def nmi(a: Partition | Sequence[int], b: Partition | Sequence[int]) -> float:
    """Normalized mutual information, natural log, arithmetic-mean normalization.

    Identical groupings score 1. If exactly one side is a single community
    the mutual information is zero and so is the score.
    """
    x, y = _labels(a), _labels(b)
    if len(x) != len(y):
        raise ValueError(f"partitions cover {len(x)} and {len(y)} vertices")
    if isinstance(a, Partition) and isinstance(b, Partition) and a.graph.n != b.graph.n:
        raise ValueError("partitions belong to different vertex sets")
    n = len(x)
    if n == 0:
        raise ValueError("empty partitions")
    cx, cy = Counter(x), Counter(y)
    joint = Counter(zip(x, y))
    hx, hy = _entropy(cx.values(), n), _entropy(cy.values(), n)
    if hx + hy == 0:
        return 1.0
    mi = sum(c / n * math.log(c * n / (cx[i] * cy[j])) for (i, j), c in joint.items())
    return min(1.0, max(0.0, 2.0 * mi / (hx + hy)))


def shared_communities(a: Partition, b: Partition) -> int:
    """Number of communities with exactly the same members in both partitions."""
    sa = {frozenset(m) for m in a.members().values()}
    sb = {frozenset(m) for m in b.members().values()}
    return len(sa & sb)
