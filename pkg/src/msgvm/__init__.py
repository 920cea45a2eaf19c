"""Multistep greedy modularity optimization with vertex-mover refinement."""
from importlib import resources

from .agglomerative import Dendrogram, greedy_run, msg_run
from .analysis import (AlphaProfile, SweepResult, alpha_profile, msg_vm, predicted_widths,
                       random_baseline, six_run_protocol, sweep, topology_correlations)
from .benchgen import DegreeDistSpec, GnSpec, generate_degree_dist, generate_gn
from .graph import (Graph, VertexMapping, contract_chains, largest_connected_component,
                    load_edge_list, permute_labels, read_edge_list)
from .metrics import PathwayAnnotation, nmi, pathway_score
from .quality import Partition, apply_merge, apply_move, merge_gain, modularity, move_gain
from .refine import vm_refine

__version__ = "0.1.0"


def zachary() -> Graph:
    """Zachary's karate club (34 vertices, 78 edges)."""
    with resources.files(__package__).joinpath("data/zachary.txt").open(encoding="utf-8") as f:
        return load_edge_list(f)


__all__ = [
    "AlphaProfile", "DegreeDistSpec", "Dendrogram", "GnSpec", "Graph", "Partition",
    "PathwayAnnotation", "SweepResult", "VertexMapping", "alpha_profile", "apply_merge",
    "apply_move", "contract_chains", "generate_degree_dist", "generate_gn", "greedy_run",
    "largest_connected_component", "load_edge_list", "merge_gain", "modularity", "move_gain",
    "msg_run", "msg_vm", "nmi", "pathway_score", "permute_labels", "predicted_widths",
    "random_baseline", "read_edge_list", "six_run_protocol", "sweep", "topology_correlations",
    "vm_refine", "zachary",
]
