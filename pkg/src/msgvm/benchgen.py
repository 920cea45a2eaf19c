"""Seeded benchmark generators.

Randomness comes from numpy's PCG64 bit generator seeded through
``SeedSequence(seed)``; retries draw from spawned child sequences, so every
output is a pure function of its GnSpec or DegreeDistSpec.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .graph import Graph, largest_connected_component
from .quality import Partition


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    return np.random.Generator(np.random.PCG64(ss))


@dataclass(frozen=True)
class GnSpec:
    """Planted partition: ``communities`` equal groups, mean out-degree ``z_out``."""

    vertices: int = 128
    communities: int = 4
    z_out: float = 4.0
    total_edges: int = 1024
    seed: int = 0

    def __post_init__(self):
        if self.vertices <= 0 or self.communities <= 0:
            raise ValueError("vertices and communities must be positive")
        if self.vertices % self.communities:
            raise ValueError(f"{self.vertices} vertices do not split into "
                             f"{self.communities} equal communities")
        if self.z_out < 0:
            raise ValueError("z_out must be non-negative")
        if self.z_out > 2 * self.total_edges / self.vertices:
            raise ValueError(f"z_out={self.z_out} exceeds the mean degree "
                             f"{2 * self.total_edges / self.vertices}")

    def to_dict(self) -> dict:
        return {"kind": "gn", **asdict(self)}


# GN ensembles: (total_edges, z_out range)
GN_SETS = {
    "GN1": (1024, (3.0, 16.0)),
    "GN2": (512, (2.0, 8.0)),
    "GN3": (2048, (2.0, 32.0)),
}


def gn_probabilities(spec: GnSpec) -> tuple[float, float]:
    """``(p_in, p_out)`` giving an expected ``total_edges`` and mean out-degree ``z_out``."""
    n, c = spec.vertices, spec.communities
    size = n // c
    intra = c * size * (size - 1) / 2
    inter = (n * n - c * size * size) / 2
    p_out = spec.z_out / (n - size) if n > size else 0.0
    if p_out > 1:
        raise ValueError(f"p_out={p_out:.4g} > 1: z_out too large")
    expected_out = p_out * inter
    if intra == 0:
        if spec.total_edges != expected_out:
            raise ValueError("singleton communities cannot hold internal edges")
        return 0.0, p_out
    p_in = (spec.total_edges - expected_out) / intra
    if p_in < 0:
        raise ValueError(f"p_in={p_in:.4g} < 0: z_out leaves no room for internal edges")
    if p_in > 1:
        raise ValueError(f"p_in={p_in:.4g} > 1: too many edges for the community size")
    return p_in, p_out


def generate_gn(spec: GnSpec) -> tuple[Graph, Partition]:
    """Independent Bernoulli edges inside and between planted groups."""
    p_in, p_out = gn_probabilities(spec)
    n = spec.vertices
    size = n // spec.communities
    rng = make_rng(spec.seed)
    iu, ju = np.triu_indices(n, k=1)
    same = (iu // size) == (ju // size)
    prob = np.where(same, p_in, p_out)
    keep = rng.random(iu.size) < prob
    edges = zip(iu[keep].tolist(), ju[keep].tolist())
    g = Graph.from_edges(n, edges)
    planted = Partition(g, [v // size for v in range(n)])
    return g, planted


@dataclass(frozen=True)
class DegreeDistSpec:
    """Configuration-model graph with a prescribed degree distribution.

    ``kind="exponential"``: degrees ``1, 2, ...`` geometric with mean
    ``mean_degree``. ``kind="linear"``: ``P(k)`` proportional to
    ``max(0, max_degree - k)`` for ``k >= 1``.
    """

    kind: str = "exponential"
    vertex_range: tuple[int, int] = (11, 976)
    mean_degree: float = 4.0
    max_degree: int = 40
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("exponential", "linear"):
            raise ValueError(f"unknown degree distribution {self.kind!r}")
        lo, hi = self.vertex_range
        if lo < 2 or hi < lo:
            raise ValueError(f"bad vertex range {self.vertex_range}")
        if self.kind == "exponential" and self.mean_degree < 1:
            raise ValueError("mean_degree must be >= 1")
        if self.kind == "linear" and self.max_degree < 2:
            raise ValueError("max_degree must be >= 2")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["vertex_range"] = list(self.vertex_range)
        return d


# Desk-scale SED/SLD/LLD presets (small exponential, small linear, large linear).
SED = DegreeDistSpec("exponential", (11, 976), mean_degree=4.0)
SLD = DegreeDistSpec("linear", (19, 3777), max_degree=40)
LLD = DegreeDistSpec("linear", (309, 4278), max_degree=160)


def sample_degrees(spec: DegreeDistSpec, n: int, rng: np.random.Generator) -> np.ndarray:
    if spec.kind == "exponential":
        return rng.geometric(1.0 / spec.mean_degree, size=n)
    ks = np.arange(1, spec.max_degree)
    w = (spec.max_degree - ks).astype(float)
    return rng.choice(ks, size=n, p=w / w.sum())


def _configuration_graph(spec: DegreeDistSpec, rng: np.random.Generator) -> Graph:
    lo, hi = spec.vertex_range
    n = int(rng.integers(lo, hi + 1))
    deg = sample_degrees(spec, n, rng)
    if deg.sum() % 2:
        deg[rng.integers(n)] += 1
    stubs = np.repeat(np.arange(n), deg)
    rng.shuffle(stubs)
    pairs = stubs.reshape(-1, 2)
    g = Graph.from_edges(n, map(tuple, pairs.tolist()))
    lcc, _ = largest_connected_component(g)
    return lcc


def generate_degree_dist(spec: DegreeDistSpec, max_retries: int = 16) -> Graph:
    """Pair degree stubs at random, simplify, keep the largest component.

    Vertex labels are the pre-projection indices. A graph that ends up without
    edges is regenerated from the next child seed sequence.
    """
    root = np.random.SeedSequence(spec.seed)
    ss = root
    for _ in range(max_retries + 1):
        g = _configuration_graph(spec, make_rng(ss))
        if g.edge_count > 0:
            return g
        ss = root.spawn(1)[0]
    raise RuntimeError(f"no graph with edges after {max_retries} retries (seed {spec.seed})")


def gn_ensemble(name: str, count: int, seed: int) -> list[GnSpec]:
    """Specs for a GN set with ``z_out`` uniform over the set's range."""
    total, (zlo, zhi) = GN_SETS[name]
    rng = make_rng(seed)
    seeds = np.random.SeedSequence(seed).generate_state(count).tolist()
    return [GnSpec(total_edges=total, z_out=float(rng.uniform(zlo, zhi)), seed=s)
            for s in seeds]


def degree_ensemble(base: DegreeDistSpec, count: int, seed: int) -> list[DegreeDistSpec]:
    seeds = np.random.SeedSequence(seed).generate_state(count).tolist()
    return [DegreeDistSpec(base.kind, base.vertex_range, base.mean_degree,
                           base.max_degree, s) for s in seeds]


