"""Readers and writers for the TSV/JSON files exchanged by the CLI.

Floats are written with ``repr`` so output is byte-identical across runs and
round-trips exactly.
"""
from __future__ import annotations

import json
from typing import Iterable, TextIO

import numpy as np

from .agglomerative import Dendrogram
from .analysis import AlphaProfile, SweepResult
from .graph import Graph, VertexMapping
from .metrics import PathwayAnnotation
from .quality import Partition

SCHEMA_VERSION = 1


class FormatError(ValueError):
    pass


def _rows(stream: Iterable[str]):
    for lineno, raw in enumerate(stream, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        yield lineno, line.split("\t")


def format_partition(p: Partition) -> str:
    labels = p.graph.labels
    return "".join(f"{labels[v]}\t{c}\n" for v, c in enumerate(p.assignment))


def read_partition(stream: Iterable[str], g: Graph) -> Partition:
    """Partition TSV ``label<TAB>community``; must cover every vertex once."""
    a = [-1] * g.n
    for lineno, cols in _rows(stream):
        if len(cols) != 2:
            raise FormatError(f"line {lineno}: expected 2 columns")
        label, cid = cols
        if not g.has_label(label):
            raise FormatError(f"line {lineno}: unknown vertex {label!r}")
        try:
            c = int(cid)
        except ValueError:
            raise FormatError(f"line {lineno}: bad community id {cid!r}") from None
        if c < 0:
            raise FormatError(f"line {lineno}: negative community id")
        v = g.index_of(label)
        if a[v] != -1:
            raise FormatError(f"line {lineno}: vertex {label!r} listed twice")
        a[v] = c
    if -1 in a:
        missing = g.labels[a.index(-1)]
        raise FormatError(f"vertex {missing!r} has no community")
    return Partition(g, a)


def format_dendrogram(d: Dendrogram) -> str:
    return "".join(f"{it}\t{keep}\t{gone}\t{dq!r}\n" for it, keep, gone, dq in d.merges)


def read_dendrogram(stream: Iterable[str], n: int) -> Dendrogram:
    d = Dendrogram(n)
    for lineno, cols in _rows(stream):
        if len(cols) != 4:
            raise FormatError(f"line {lineno}: expected 4 columns")
        d.merges.append((int(cols[0]), int(cols[1]), int(cols[2]), float(cols[3])))
    d.depth = d.tree_height()
    return d


def format_mapping(original: Graph, mapping: VertexMapping, target: Graph) -> str:
    """``original_label<TAB>new_label`` for every surviving original vertex."""
    rows = sorted(mapping.forward.items())
    return "".join(f"{original.labels[old]}\t{target.labels[new]}\n" for old, new in rows)


def read_annotation(stream: Iterable[str]) -> PathwayAnnotation:
    """Annotation TSV ``label<TAB>p1,p2,...``; the second field may be empty."""
    out: dict[str, frozenset[str]] = {}
    for lineno, cols in _rows(stream):
        if len(cols) == 1:
            cols.append("")
        if len(cols) != 2:
            raise FormatError(f"line {lineno}: expected 2 columns")
        names = frozenset(x.strip() for x in cols[1].split(",") if x.strip())
        out[cols[0]] = out.get(cols[0], frozenset()) | names
    return PathwayAnnotation(out)


def dump_json(obj, f: TextIO) -> None:
    json.dump(obj, f, indent=2, sort_keys=True)
    f.write("\n")


def sweep_to_json(r: SweepResult) -> dict:
    return {"schema_version": SCHEMA_VERSION, **r.to_dict()}


def sweep_from_json(d: dict) -> SweepResult:
    return SweepResult.from_dict(d)


def format_profile(p: AlphaProfile) -> str:
    return "".join(f"{a:.3f}\t{v!r}\n" for a, v in zip(p.alphas.tolist(), p.values.tolist()))


def read_profile(stream: Iterable[str]) -> tuple[np.ndarray, np.ndarray]:
    a, v = [], []
    for _, cols in _rows(stream):
        a.append(float(cols[0]))
        v.append(float(cols[1]))
    return np.array(a), np.array(v)
