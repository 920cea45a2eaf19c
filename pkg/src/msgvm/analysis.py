"""Step-width study: sweeps over ``l``, the ``sqrt(L)`` prediction, profiles and baselines."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .agglomerative import Dendrogram, msg_run
from .graph import Graph
from .quality import Partition, modularity
from .refine import vm_refine

PREDICTION_QUARTERS = (1, 2, 3, 4)  # alpha = 0.25, 0.5, 0.75, 1


class MsgVmResult(NamedTuple):
    l: int
    before: Partition
    after: Partition
    q_before: float
    q_after: float
    dendrogram: Dendrogram


def msg_vm(g: Graph, l: int, single_pass: bool = False) -> MsgVmResult:
    run = msg_run(g, l)
    after, _ = vm_refine(g, run.partition, single_pass=single_pass)
    return MsgVmResult(l, run.partition, after, modularity(g, run.partition),
                       modularity(g, after), run.dendrogram)


@dataclass(frozen=True)
class SweepRecord:
    l: int
    q_msg: float
    q_msgvm: float


@dataclass
class SweepResult:
    network: str
    L: int
    records: list[SweepRecord] = field(default_factory=list)

    def __post_init__(self):
        self.records.sort(key=lambda r: r.l)
        self._by_l = {r.l: r for r in self.records}

    @property
    def l_opt(self) -> int:
        """Smallest ``l`` reaching the best refined modularity."""
        best = self.records[0]
        for r in self.records[1:]:
            if r.q_msgvm > best.q_msgvm:
                best = r
        return best.l

    @property
    def q_opt(self) -> float:
        return max(r.q_msgvm for r in self.records)

    def q(self, l: int) -> float:
        try:
            return self._by_l[l].q_msgvm
        except KeyError:
            raise ValueError(f"{self.network or 'network'}: l={l} not swept") from None

    def covers(self, l: int) -> bool:
        return l in self._by_l

    def to_dict(self) -> dict:
        return {
            "network": self.network,
            "L": self.L,
            "records": [{"l": r.l, "q_msg": r.q_msg, "q_msgvm": r.q_msgvm}
                        for r in self.records],
            "l_opt": self.l_opt,
            "q_opt": self.q_opt,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SweepResult":
        recs = [SweepRecord(int(r["l"]), float(r["q_msg"]), float(r["q_msgvm"]))
                for r in d["records"]]
        return cls(d.get("network", ""), int(d["L"]), recs)


def auto_range(L: int) -> list[int]:
    """Every ``l < min(5000, L)``; at least ``[1]``."""
    return list(range(1, max(2, min(5000, L))))


def generated_range(L: int) -> list[int]:
    """Every ``l < 10 sqrt(L)``."""
    return list(range(1, math.isqrt(100 * L - 1) + 1))


_worker_graph: Graph | None = None


def _init_worker(g: Graph) -> None:
    global _worker_graph
    _worker_graph = g


def _sweep_one(l: int) -> SweepRecord:
    r = msg_vm(_worker_graph, l)
    return SweepRecord(l, r.q_before, r.q_after)


def sweep(g: Graph, l_values: Iterable[int], network: str = "", jobs: int = 1) -> SweepResult:
    """Run MSG followed by VM for every ``l``; records come back ordered by ``l``."""
    ls = sorted(set(l_values))
    if not ls:
        raise ValueError("no step widths to sweep")
    if ls[0] < 1:
        raise ValueError(f"step width must be >= 1, got {ls[0]}")
    if g.edge_count == 0:
        raise ValueError("graph has no edges")
    if jobs > 1:
        from multiprocessing import Pool
        with Pool(jobs, initializer=_init_worker, initargs=(g,)) as pool:
            records = pool.map(_sweep_one, ls)
    else:
        records = []
        for l in ls:
            r = msg_vm(g, l)
            records.append(SweepRecord(l, r.q_before, r.q_after))
    return SweepResult(network, g.edge_count, records)


def predicted_widths(L: int) -> list[int]:
    """``floor(alpha sqrt(L))`` for alpha in 0.25, 0.5, 0.75, 1, each at least 1."""
    if L < 1:
        raise ValueError("L must be positive")
    return [max(1, math.isqrt(k * k * L) // 4) for k in PREDICTION_QUARTERS]


def six_run_widths(L: int, quality) -> tuple[int, float, dict[int, float]]:
    """Best of the predicted widths and their neighbours under ``quality(l)``.

    Returns ``(l_used, q, tried)``; ties resolve to the smallest ``l``.
    """
    tried: dict[int, float] = {}

    def q(l: int) -> float:
        if l not in tried:
            tried[l] = quality(l)
        return tried[l]

    four = predicted_widths(L)
    best = min(four, key=lambda l: (-q(l), l))
    for l in (max(1, best - 1), best + 1):
        q(l)
    l_used = min(tried, key=lambda l: (-tried[l], l))
    return l_used, tried[l_used], tried


class SixRunResult(NamedTuple):
    partition: Partition
    q_pred: float
    l_used: int
    tried: dict[int, float]
    run: MsgVmResult


def six_run_protocol(g: Graph) -> SixRunResult:
    """MSG-VM at the four predicted widths plus the two integers beside the best."""
    if g.edge_count == 0:
        raise ValueError("graph has no edges")
    runs: dict[int, MsgVmResult] = {}

    def quality(l: int) -> float:
        runs[l] = msg_vm(g, l)
        return runs[l].q_after

    l_used, q, tried = six_run_widths(g.edge_count, quality)
    return SixRunResult(runs[l_used].after, q, l_used, tried, runs[l_used])


def six_run_from_sweep(r: SweepResult) -> tuple[int, float]:
    """The six-run protocol evaluated by lookup in a sweep."""
    l_used, q, _ = six_run_widths(r.L, r.q)
    return l_used, q


@dataclass
class AlphaProfile:
    set_id: str
    count: int
    alphas: np.ndarray
    values: np.ndarray

    @property
    def argmax(self) -> float:
        return float(self.alphas[int(np.argmax(self.values))])

    @property
    def peak(self) -> float:
        return float(self.values.max())


def width_at(alpha: float, L: int) -> int:
    """``floor(alpha sqrt(L))``, at least 1, robust to round-off at integers."""
    return max(1, math.floor(alpha * math.sqrt(L) + 1e-9))


def default_alpha_grid(results: Sequence[SweepResult], step: float = 0.001) -> np.ndarray:
    """Multiples of ``step`` up to the largest alpha every sweep covers."""
    top = min(max(r.records[-1].l + 1, 1) / math.sqrt(r.L) for r in results)
    k = max(1, int(math.floor(top / step - 1e-9)))
    return np.arange(1, k + 1) * step


def alpha_profile(results: Sequence[SweepResult], alpha_grid: Sequence[float] | None = None,
                  set_id: str = "") -> AlphaProfile:
    """Mean over networks of ``Q(floor(alpha sqrt(L))) / Q_opt`` on a grid of alphas."""
    if not results:
        raise ValueError("no sweeps")
    alphas = default_alpha_grid(results) if alpha_grid is None else np.asarray(alpha_grid, float)
    total = np.zeros(len(alphas))
    for r in results:
        q_opt = r.q_opt
        if q_opt <= 0:
            raise ValueError(f"{r.network or 'network'}: non-positive Q_opt {q_opt}")
        row = []
        for a in alphas:
            l = width_at(float(a), r.L)
            if not r.covers(l):
                raise ValueError(f"{r.network or 'network'}: l={l} (alpha={a:.3f}) not swept")
            row.append(r.q(l) / q_opt)
        total += np.array(row)
    return AlphaProfile(set_id, len(results), alphas, total / len(results))


def capped_max(r: SweepResult, cap: str) -> int:
    if cap == "full":
        return r.records[-1].l
    if cap in ("1.5sqrt", "1.5sqrtL"):
        return math.isqrt(9 * r.L) // 2
    raise ValueError(f"unknown cap {cap!r}")


def random_baseline(r: SweepResult, picks: int = 6, samples: int = 1000,
                    cap: str = "full", seed: int = 0) -> float:
    """Mean over ``samples`` of the best Q among ``picks`` uniform draws of ``l``.

    Draws are with replacement from ``1..cap``; ``cap="full"`` is the largest
    swept ``l``, ``cap="1.5sqrt"`` is ``floor(1.5 sqrt(L))``.
    """
    hi = capped_max(r, cap)
    if hi < 1:
        raise ValueError(f"capped range is empty (cap={cap}, L={r.L})")
    if picks < 1 or samples < 1:
        raise ValueError("picks and samples must be positive")
    qs = np.array([r.q(l) for l in range(1, hi + 1)])
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    draws = rng.integers(0, hi, size=(samples, picks))
    return float(qs[draws].max(axis=1).mean())


# -- topology -----------------------------------------------------------------

def clustering(g: Graph) -> list[float]:
    """Local clustering coefficient; 0 for vertices of degree < 2."""
    sets = [set(a) for a in g.adj]
    out = []
    for v, nb in enumerate(g.adj):
        k = len(nb)
        if k < 2:
            out.append(0.0)
            continue
        t = sum(len(sets[u] & sets[v]) for u in nb) // 2
        out.append(2.0 * t / (k * (k - 1)))
    return out


def topology(g: Graph) -> dict[str, float]:
    deg = np.array(g.degrees(), float)
    cc = np.array(clustering(g))
    edges = g.edges()
    if edges:
        u, v = np.array(edges).T
        dcc = np.abs(cc[u] - cc[v])
        ddeg = np.abs(deg[u] - deg[v])
    else:
        dcc = ddeg = np.zeros(1)
    return {
        "N": float(g.n),
        "L": float(g.edge_count),
        "max_degree": float(deg.max(initial=0)),
        "mean_degree": float(deg.mean()) if g.n else 0.0,
        "std_degree": float(deg.std()) if g.n else 0.0,
        "mean_clustering": float(cc.mean()) if g.n else 0.0,
        "mean_clustering^2": float((cc ** 2).mean()) if g.n else 0.0,
        "mean_clustering^3": float((cc ** 3).mean()) if g.n else 0.0,
        "mean_edge_clustering_diff": float(dcc.mean()),
        "std_edge_clustering_diff": float(dcc.std()),
        "mean_edge_degree_diff": float(ddeg.mean()),
        "std_edge_degree_diff": float(ddeg.std()),
        "sqrt_L": math.sqrt(g.edge_count),
    }


class Correlation(NamedTuple):
    property: str
    r: float
    degenerate: bool


def pearson(x: Sequence[float], y: Sequence[float]) -> tuple[float, bool]:
    """Pearson r; ``(0.0, True)`` when either side has zero variance."""
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    dx, dy = x - x.mean(), y - y.mean()
    sxx, syy = float(dx @ dx), float(dy @ dy)
    if sxx == 0 or syy == 0:
        return 0.0, True
    return float(dx @ dy / math.sqrt(sxx * syy)), False


def topology_correlations(graphs: Sequence[Graph], sweeps: Sequence[SweepResult]) -> list[Correlation]:
    """Correlation of ``l_opt`` with each topological property, across networks."""
    if len(graphs) != len(sweeps):
        raise ValueError("need one sweep per graph")
    if len(graphs) < 3:
        raise ValueError("need at least 3 networks for a correlation")
    props = [topology(g) for g in graphs]
    lopt = [s.l_opt for s in sweeps]
    out = []
    for name in props[0]:
        r, degenerate = pearson([p[name] for p in props], lopt)
        out.append(Correlation(name, r, degenerate))
    return out
