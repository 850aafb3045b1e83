"""Certificates, max-flow feasibility, lift-and-project and verifiers."""

from __future__ import annotations

from propa.flows.certificates import (
    Certificate,
    FlowCertificate,
    MeasureFamily,
    PartitionFamily,
    VerificationReport,
    certificate_from_dict,
    edge_key,
    l1_distance,
    max_edge_variation,
    net_supplies,
    parse_edge_key,
)
from propa.flows.maxflow import (
    FeasibilityResult,
    check_weighted_isoperimetric,
    lift_and_project,
    max_flow_feasible,
)
from propa.flows.partitions import (
    flatten_partition,
    measures_from_partition,
    partition_from_measures,
)
from propa.flows.verify import (
    verify_flow_certificate,
    verify_measure_family,
    verify_partition_family,
    weak_duality_check,
)

__all__ = [
    "Certificate",
    "FlowCertificate",
    "MeasureFamily",
    "PartitionFamily",
    "VerificationReport",
    "certificate_from_dict",
    "edge_key",
    "l1_distance",
    "max_edge_variation",
    "net_supplies",
    "parse_edge_key",
    "FeasibilityResult",
    "check_weighted_isoperimetric",
    "lift_and_project",
    "max_flow_feasible",
    "flatten_partition",
    "measures_from_partition",
    "partition_from_measures",
    "verify_flow_certificate",
    "verify_measure_family",
    "verify_partition_family",
    "weak_duality_check",
]
