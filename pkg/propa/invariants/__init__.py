"""Graph invariants at a scale: epsilon, Cheeger constant, closed forms."""

from __future__ import annotations

from propa.invariants.cheeger import (
    CheegerMethod,
    CheegerReport,
    RelaxationReport,
    SparsestCutReport,
    cheeger_at_scale,
    mean_property_a_at_scale,
    sparsest_cut_at_scale,
    uniform_demand_at_scale,
    uniform_flows_at_scale,
)
from propa.invariants.cube import cube_dual_certificate, cube_primal_certificate
from propa.invariants.documents import needs_graph, verify_document
from propa.invariants.epsilon import (
    EpsilonReport,
    Method,
    SubgraphCheck,
    epsilon_at_scale,
    epsilon_sequence,
    resolve_scale,
    subgraph_scale_inequality_check,
    truncated_isoperimetric_value,
)
from propa.invariants.formulas import (
    ball_volume,
    cube_epsilon_formula,
    cube_layer_weight,
    girth_cheeger_formula,
    girth_epsilon_formula,
    girth_epsilon_scale_limit,
    tree_isoperimetric_number,
)

__all__ = [
    "CheegerMethod",
    "CheegerReport",
    "RelaxationReport",
    "SparsestCutReport",
    "cheeger_at_scale",
    "mean_property_a_at_scale",
    "sparsest_cut_at_scale",
    "uniform_demand_at_scale",
    "uniform_flows_at_scale",
    "needs_graph",
    "verify_document",
    "cube_dual_certificate",
    "cube_primal_certificate",
    "EpsilonReport",
    "Method",
    "SubgraphCheck",
    "epsilon_at_scale",
    "epsilon_sequence",
    "resolve_scale",
    "subgraph_scale_inequality_check",
    "truncated_isoperimetric_value",
    "ball_volume",
    "cube_epsilon_formula",
    "cube_layer_weight",
    "girth_cheeger_formula",
    "girth_epsilon_formula",
    "girth_epsilon_scale_limit",
    "tree_isoperimetric_number",
]
