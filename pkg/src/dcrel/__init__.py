"""Diameter-constrained reliability: exact evaluation, estimation and reduction gadgets."""

from dcrel.closed_form import reliability_d1, reliability_k2_d2
from dcrel.errors import CapExceededError, DcrError, InstanceError, ParseError
from dcrel.exact import (
    PathsetCount,
    count_diameter_bounded_subgraphs,
    count_min_pathsets,
    reliability_enumerate,
    reliability_factoring,
)
from dcrel.graph import (
    EdgeStateMask,
    Graph,
    NetworkInstance,
    StateClass,
    classify_state,
    format_instance,
    parse_graph,
    parse_instance,
    probability,
    structure_phi,
)
from dcrel.montecarlo import EstimateReport, estimate_reliability
from dcrel.reductions import (
    BipartiteInstance,
    GadgetResult,
    build_all_terminal_gadget,
    build_cp_gadget,
    build_diameter2_gadget,
    count_vertex_covers,
    parse_bipartite,
    verify_canale_correspondence,
    verify_romero_equality,
    verify_vc_identity,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteInstance",
    "CapExceededError",
    "DcrError",
    "EdgeStateMask",
    "EstimateReport",
    "GadgetResult",
    "Graph",
    "InstanceError",
    "NetworkInstance",
    "ParseError",
    "PathsetCount",
    "StateClass",
    "build_all_terminal_gadget",
    "build_cp_gadget",
    "build_diameter2_gadget",
    "classify_state",
    "count_diameter_bounded_subgraphs",
    "count_min_pathsets",
    "count_vertex_covers",
    "estimate_reliability",
    "format_instance",
    "parse_bipartite",
    "parse_graph",
    "parse_instance",
    "probability",
    "reliability_d1",
    "reliability_enumerate",
    "reliability_factoring",
    "reliability_k2_d2",
    "structure_phi",
    "verify_canale_correspondence",
    "verify_romero_equality",
    "verify_vc_identity",
]
