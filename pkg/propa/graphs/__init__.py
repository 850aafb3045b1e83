"""Graphs, scales and the path-length metric."""

from __future__ import annotations

from propa.graphs.base import DistanceMatrix, Edge, Graph, Scale, canonical_edge
from propa.graphs.generators import (
    circular_ladder,
    cycle,
    disjoint_union,
    grid,
    heawood,
    hypercube,
    path,
    petersen,
    random_connected,
    wheel,
    with_isolated_vertex,
)
from propa.graphs.metric import (
    all_pairs_distances,
    ball,
    ball_scale,
    components,
    diameter,
    dual_scale,
    girth,
    induced_subgraph,
    is_convex_subgraph,
    to_networkx,
    truncated_family,
)

__all__ = [
    "DistanceMatrix",
    "Edge",
    "Graph",
    "Scale",
    "canonical_edge",
    "circular_ladder",
    "cycle",
    "disjoint_union",
    "grid",
    "heawood",
    "hypercube",
    "path",
    "petersen",
    "random_connected",
    "wheel",
    "with_isolated_vertex",
    "all_pairs_distances",
    "ball",
    "ball_scale",
    "components",
    "diameter",
    "dual_scale",
    "girth",
    "induced_subgraph",
    "is_convex_subgraph",
    "to_networkx",
    "truncated_family",
]
