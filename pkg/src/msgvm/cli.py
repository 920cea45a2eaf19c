"""Command-line front end.

Exit codes: 0 success, 1 I/O or parse error, 2 invalid configuration.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from . import analysis, benchgen, formats
from .agglomerative import greedy_run, msg_run
from .graph import (EdgeListParseError, Graph, VertexMapping, contract_chains,
                    format_edge_list, largest_connected_component, permute_labels,
                    read_edge_list)
from .metrics import nmi, pathway_score, shared_communities
from .quality import Partition, modularity
from .refine import vm_refine

log = logging.getLogger("msgvm")


class ConfigError(Exception):
    pass


# -- shared pieces --------------------------------------------------------------

def add_preprocess_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lcc", action="store_true", help="keep the largest connected component")
    p.add_argument("--contract-chains", action="store_true",
                   help="collapse chains of degree-1/2 vertices")
    p.add_argument("--order", choices=["lcc-first", "contract-first"], default="lcc-first")
    p.add_argument("--permute", type=int, metavar="SEED",
                   help="randomly renumber vertices with this seed")


def load_graph(path: str, args) -> tuple[Graph, Graph, VertexMapping]:
    """Read and preprocess; returns (original, processed, mapping)."""
    original = read_edge_list(path)
    g, mapping = original, VertexMapping.identity(original.n)
    steps = []
    if args.lcc:
        steps.append(largest_connected_component)
    if args.contract_chains:
        steps.append(contract_chains)
    if args.order == "contract-first":
        steps.reverse()
    for step in steps:
        g, m = step(g)
        mapping = mapping.then(m)
    if args.permute is not None:
        g, m = permute_labels(g, args.permute)
        mapping = mapping.then(m)
    return original, g, mapping


def write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def preprocessing(args) -> dict:
    return {"lcc": args.lcc, "contract_chains": args.contract_chains,
            "order": args.order, "permute": args.permute}


# -- detect -----------------------------------------------------------------------

def _l_mode(args) -> str | None:
    if args.alg == "greedy":
        if args.l is not None or args.protocol is not None:
            raise ConfigError("greedy takes no step width")
        return None
    if args.l is not None and args.protocol is not None:
        raise ConfigError("give either --l or --protocol, not both")
    if args.l is not None:
        if args.l < 1:
            raise ConfigError(f"--l must be >= 1, got {args.l}")
        return "explicit"
    return args.protocol or "six-run"


def cmd_detect(args) -> int:
    mode = _l_mode(args)
    original, g, mapping = load_graph(args.input, args)
    if g.edge_count == 0:
        raise ConfigError("graph has no edges; modularity is undefined")
    refine = args.alg == "msg-vm"

    def run(l: int):
        r = msg_run(g, l)
        p = vm_refine(g, r.partition, single_pass=args.single_pass)[0] if refine else r.partition
        return p, r.dendrogram

    if args.alg == "greedy":
        r = greedy_run(g)
        part, dendro, l_used = r.partition, r.dendrogram, None
    elif mode == "explicit":
        part, dendro = run(args.l)
        l_used = args.l
    else:
        runs = {}

        def quality(l):
            runs[l] = run(l)
            return modularity(g, runs[l][0])

        l_used, _, _ = analysis.six_run_widths(g.edge_count, quality)
        part, dendro = runs[l_used]

    summary = {
        "schema_version": formats.SCHEMA_VERSION,
        "algorithm": args.alg,
        "input": Path(args.input).name,
        "N": g.n,
        "L": g.edge_count,
        "N_C": part.community_count,
        "Q": modularity(g, part),
        "l_used": l_used,
        "l_mode": mode,
        "dendrogram_depth": dendro.depth,
        "preprocessing": preprocessing(args),
    }
    if args.out:
        prefix = Path(args.out)
        write_text(prefix.with_name(prefix.name + ".partition.tsv"), formats.format_partition(part))
        write_text(prefix.with_name(prefix.name + ".dendrogram.tsv"), formats.format_dendrogram(dendro))
        write_text(prefix.with_name(prefix.name + ".summary.json"), json_text(summary))
        if g is not original:
            write_text(prefix.with_name(prefix.name + ".mapping.tsv"),
                       formats.format_mapping(original, mapping, g))
    sys.stdout.write(json_text(summary))
    return 0


# -- sweep ------------------------------------------------------------------------

def parse_range(spec: str, L: int) -> list[int]:
    if spec == "auto":
        return analysis.auto_range(L)
    if spec == "generated":
        return analysis.generated_range(L)
    try:
        if ":" in spec:
            lo, hi = spec.split(":")
            ls = list(range(int(lo), int(hi) + 1))
        else:
            ls = [int(x) for x in spec.split(",")]
    except ValueError:
        raise ConfigError(f"bad --range {spec!r}") from None
    if not ls or min(ls) < 1:
        raise ConfigError(f"--range {spec!r} must list step widths >= 1")
    return ls


def cmd_sweep(args) -> int:
    if args.jobs < 1:
        raise ConfigError("--jobs must be >= 1")
    if len(args.inputs) > 1 and args.out and not args.out_dir:
        raise ConfigError("several inputs need --out-dir")
    graphs = []
    for path in args.inputs:
        _, g, _ = load_graph(path, args)
        if g.edge_count == 0:
            raise ConfigError(f"{path}: graph has no edges")
        graphs.append((Path(path).stem, g, parse_range(args.range, g.edge_count)))
    results = [analysis.sweep(g, ls, network=name, jobs=args.jobs) for name, g, ls in graphs]

    summary = {"schema_version": formats.SCHEMA_VERSION, "networks": []}
    for r in results:
        try:
            l_pred, q_pred = analysis.six_run_from_sweep(r)
        except ValueError:
            l_pred = q_pred = None
        entry = {"network": r.network, "L": r.L, "l_opt": r.l_opt, "q_opt": r.q_opt,
                 "l_opt_over_sqrt_L": r.l_opt / math.sqrt(r.L),
                 "l_pred": l_pred, "q_pred": q_pred}
        if args.baseline:
            for cap in ("full", "1.5sqrt"):
                try:
                    entry[f"q_rand_{cap}"] = analysis.random_baseline(r, cap=cap, seed=args.seed)
                except ValueError:
                    entry[f"q_rand_{cap}"] = None
        summary["networks"].append(entry)
    profile = None
    if args.profile:
        profile = analysis.alpha_profile(results, set_id=args.set_id)
        summary["alpha_argmax"] = profile.argmax
        summary["alpha_peak"] = profile.peak

    if args.out_dir:
        out_dir = Path(args.out_dir)
        for r in results:
            write_text(out_dir / f"{r.network}.sweep.json", json_text(formats.sweep_to_json(r)))
    elif args.out:
        write_text(Path(args.out), json_text(formats.sweep_to_json(results[0])))
    if profile is not None:
        write_text(Path(args.profile), formats.format_profile(profile))
    if not args.out and not args.out_dir and len(results) == 1:
        sys.stdout.write(json_text(formats.sweep_to_json(results[0])))
    else:
        sys.stdout.write(json_text(summary))
    return 0


# -- generate ---------------------------------------------------------------------

def cmd_generate(args) -> int:
    if args.gn == (args.degree_dist is not None):
        raise ConfigError("choose exactly one of --gn and --degree-dist")
    try:
        if args.gn:
            spec = benchgen.GnSpec(args.vertices, args.communities, args.z_out,
                                   args.edges, args.seed)
            g, planted = benchgen.generate_gn(spec)
            manifest = spec.to_dict()
        else:
            lo, hi = args.vertex_range
            spec = benchgen.DegreeDistSpec(args.degree_dist, (lo, hi), args.mean_degree,
                                           args.max_degree, args.seed)
            g, planted = benchgen.generate_degree_dist(spec), None
            manifest = {"kind": "degree_dist", **spec.to_dict()}
    except ValueError as e:
        raise ConfigError(str(e)) from None
    manifest.update(schema_version=formats.SCHEMA_VERSION, N=g.n, L=g.edge_count)
    prefix = Path(args.out)
    write_text(prefix.with_name(prefix.name + ".edges.txt"), format_edge_list(g))
    if planted is not None:
        write_text(prefix.with_name(prefix.name + ".planted.tsv"), formats.format_partition(planted))
    write_text(prefix.with_name(prefix.name + ".json"), json_text(manifest))
    sys.stdout.write(json_text(manifest))
    return 0


# -- score / compare --------------------------------------------------------------

def _read_partition(path: str, g: Graph) -> Partition:
    with open(path, encoding="utf-8") as f:
        return formats.read_partition(f, g)


def _read_annotation(path: str, original: Graph, mapping: VertexMapping, g: Graph):
    with open(path, encoding="utf-8") as f:
        ann = formats.read_annotation(f)
    return ann.project(original, mapping, g) if g is not original else ann


def cmd_score(args) -> int:
    original, g, mapping = load_graph(args.graph, args)
    part = _read_partition(args.partition, g)
    out = {"schema_version": formats.SCHEMA_VERSION, "N_C": part.community_count}
    want_q = args.modularity or not (args.pathways or args.nmi)
    ref = _read_partition(args.nmi, g) if args.nmi else None
    ann = _read_annotation(args.pathways, original, mapping, g) if args.pathways else None
    if want_q:
        if g.edge_count == 0:
            raise ConfigError("graph has no edges; modularity is undefined")
        out["Q"] = modularity(g, part)
    if ann is not None:
        out["P"] = pathway_score(part, ann)
        out["unresolved_annotations"] = len(ann.unresolved(g))
    if ref is not None:
        out["NMI"] = nmi(part, ref)
    sys.stdout.write(json_text(out))
    return 0


def cmd_compare(args) -> int:
    """Greedy against MSG-VM on one graph."""
    if args.l is not None and args.l < 1:
        raise ConfigError(f"--l must be >= 1, got {args.l}")
    original, g, mapping = load_graph(args.graph, args)
    if g.edge_count == 0:
        raise ConfigError("graph has no edges; modularity is undefined")
    ann = _read_annotation(args.pathways, original, mapping, g) if args.pathways else None
    greedy = greedy_run(g).partition
    if args.l is not None:
        msgvm = analysis.msg_vm(g, args.l)
        l_used, mv = args.l, msgvm.after
    else:
        six = analysis.six_run_protocol(g)
        l_used, mv = six.l_used, six.partition
    out = {"schema_version": formats.SCHEMA_VERSION, "N": g.n, "L": g.edge_count,
           "l_used": l_used, "NMI": nmi(greedy, mv),
           "shared_communities": shared_communities(greedy, mv)}
    for name, p in (("greedy", greedy), ("msg-vm", mv)):
        row = {"N_C": p.community_count, "Q": modularity(g, p)}
        if ann is not None:
            row["P"] = pathway_score(p, ann)
        out[name] = row
    if args.out:
        prefix = Path(args.out)
        write_text(prefix.with_name(prefix.name + ".greedy.tsv"), formats.format_partition(greedy))
        write_text(prefix.with_name(prefix.name + ".msgvm.tsv"), formats.format_partition(mv))
    sys.stdout.write(json_text(out))
    return 0


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="msgvm", description="Multistep greedy community detection")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="find communities in an edge list")
    p.add_argument("input")
    p.add_argument("--alg", choices=["greedy", "msg", "msg-vm"], default="msg-vm")
    p.add_argument("--l", type=int, help="explicit step width")
    p.add_argument("--protocol", choices=["six-run"], help="step width selection")
    p.add_argument("--single-pass", action="store_true", help="one vertex-mover pass only")
    p.add_argument("--out", help="output prefix")
    add_preprocess_args(p)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("sweep", help="MSG-VM for a range of step widths")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--range", default="auto",
                   help="auto (l < min(5000, L)), generated (l < 10 sqrt L), A:B or a,b,c")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="sweep JSON (single input)")
    p.add_argument("--out-dir", help="one sweep JSON per input")
    p.add_argument("--profile", help="write the alpha profile TSV")
    p.add_argument("--set-id", default="")
    p.add_argument("--baseline", action="store_true", help="add random step-width baselines")
    p.add_argument("--seed", type=int, default=0)
    add_preprocess_args(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("generate", help="benchmark graphs")
    p.add_argument("--gn", action="store_true", help="planted four-group graph")
    p.add_argument("--degree-dist", choices=["exponential", "linear"])
    p.add_argument("--vertices", type=int, default=128)
    p.add_argument("--communities", type=int, default=4)
    p.add_argument("--z-out", type=float, default=4.0)
    p.add_argument("--edges", type=int, default=1024)
    p.add_argument("--vertex-range", type=int, nargs=2, default=[11, 976], metavar=("MIN", "MAX"))
    p.add_argument("--mean-degree", type=float, default=benchgen.SED.mean_degree)
    p.add_argument("--max-degree", type=int, default=40)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="graph", help="output prefix")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("score", help="score a partition file")
    p.add_argument("graph")
    p.add_argument("partition")
    p.add_argument("--modularity", action="store_true")
    p.add_argument("--pathways", help="annotation TSV")
    p.add_argument("--nmi", metavar="REFERENCE", help="reference partition TSV")
    add_preprocess_args(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("compare", help="greedy against MSG-VM")
    p.add_argument("graph")
    p.add_argument("--l", type=int, help="step width (default: six-run protocol)")
    p.add_argument("--pathways", help="annotation TSV")
    p.add_argument("--out", help="prefix for both partition files")
    add_preprocess_args(p)
    p.set_defaults(func=cmd_compare)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ConfigError as e:
        log.error("%s", e)
        return 2
    except (OSError, EdgeListParseError, formats.FormatError) as e:
        log.error("%s", e)
        return 1
    except ValueError as e:
        log.error("%s", e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
