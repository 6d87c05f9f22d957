"""Robustness of interdependent power/communication networks.

Cascading-failure simulation and Minimum Total Failure Removals (MTFR)
solvers for star networks with unidirectional or bidirectional dependency.
"""

from .cascade import (
    CascadeTrace,
    Impact,
    RemovalSet,
    Variant,
    cascade_trace,
    impact,
    is_total_failure,
    operating_set,
)
from .cycles import CycleSet, enumerate_cycles, prune_acyclic_arcs, sccs
from .errors import MTFRError
from .kernels import BACKEND
from .model import (
    DepDigraph,
    Kind,
    Mode,
    NetworkSpec,
    NodeRef,
    Side,
    is_star_mode,
    parse_network,
    project_dependency_digraph,
    serialize_network,
    star_network,
    validate,
)
from .randgen import GenConfig, gen_cycle_sampled, to_bidirectional
from .solvers import (
    Budget,
    Matching,
    Method,
    SolveReport,
    bidir_edge_mtfr,
    bidir_node_mtfr,
    brute_force_mtfr,
    exact_edge_mtfr,
    exact_node_mtfr,
    greedy_cycle_hitting,
    greedy_cycle_mtfr,
    greedy_degree,
    max_matching,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Budget",
    "CascadeTrace",
    "CycleSet",
    "DepDigraph",
    "GenConfig",
    "Impact",
    "Kind",
    "MTFRError",
    "Matching",
    "Method",
    "Mode",
    "NetworkSpec",
    "NodeRef",
    "RemovalSet",
    "Side",
    "SolveReport",
    "Variant",
    "bidir_edge_mtfr",
    "bidir_node_mtfr",
    "brute_force_mtfr",
    "cascade_trace",
    "enumerate_cycles",
    "exact_edge_mtfr",
    "exact_node_mtfr",
    "gen_cycle_sampled",
    "greedy_cycle_hitting",
    "greedy_cycle_mtfr",
    "greedy_degree",
    "impact",
    "is_star_mode",
    "is_total_failure",
    "max_matching",
    "operating_set",
    "parse_network",
    "project_dependency_digraph",
    "prune_acyclic_arcs",
    "sccs",
    "serialize_network",
    "solve",
    "star_network",
    "to_bidirectional",
    "validate",
]
