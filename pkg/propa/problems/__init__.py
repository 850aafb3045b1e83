"""LP builders for property-A invariants and certificate extraction."""

from __future__ import annotations

from propa.problems.base import IndexedLp, ProblemKind, SubsetFamily, variable_name
from propa.problems.extract import (
    demands_and_capacities,
    flat_partition_from_solution,
    flow_certificate_from_solution,
    measure_family_from_solution,
    partition_family_from_solution,
)
from propa.problems.isoperimetric import (
    build_isoperimetric,
    build_isoperimetric_dual,
    build_isoperimetric_for_family,
    flat_partition_from_z,
)
from propa.problems.measures import (
    build_mean_property_a,
    build_measures,
    build_partition,
)
from propa.problems.pseudoflows import (
    build_fixed_capacity_flows,
    build_pseudo_flows,
    build_single_column,
    build_uniform_demand_flows,
    build_uniform_flows,
)
from propa.problems.subsets import (
    all_subsets,
    connected_subsets,
    enumerate_family_subsets,
    enumerate_subsets,
    is_connected_subset,
)

__all__ = [
    "IndexedLp",
    "ProblemKind",
    "SubsetFamily",
    "variable_name",
    "demands_and_capacities",
    "flat_partition_from_solution",
    "flow_certificate_from_solution",
    "measure_family_from_solution",
    "partition_family_from_solution",
    "build_isoperimetric",
    "build_isoperimetric_dual",
    "build_isoperimetric_for_family",
    "flat_partition_from_z",
    "build_mean_property_a",
    "build_measures",
    "build_partition",
    "build_fixed_capacity_flows",
    "build_pseudo_flows",
    "build_single_column",
    "build_uniform_demand_flows",
    "build_uniform_flows",
    "all_subsets",
    "connected_subsets",
    "enumerate_family_subsets",
    "enumerate_subsets",
    "is_connected_subset",
]
