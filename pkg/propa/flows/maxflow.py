"""Demand feasibility by max-flow, and the lift from (eta, kappa) to full flows."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Any

import networkx as nx
from networkx.algorithms.flow import edmonds_karp

from propa.config import get_logger_instance
from propa.errors import InfeasibleDemandError
from propa.exact.rational import format_rational
from propa.flows.certificates import FlowCertificate, edge_key
from propa.graphs.base import Edge, Graph, Scale
from propa.parallel import parallel_map

logger = get_logger_instance("propa.maxflow")

ZERO = Fraction(0)
SOURCE = -1
SINK = -2


@dataclass
class FeasibilityResult:
    """Outcome of a demand check: a flow when feasible, a violated set otherwise."""

    feasible: bool
    flow: dict[Edge, Fraction] | None = None
    witness: frozenset[int] | None = None
    focus: int | None = None

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "feasible": self.feasible,
            "focus": self.focus,
            "witness": None if self.witness is None else sorted(self.witness),
            "flow": (
                None
                if self.flow is None
                else {edge_key(e): format_rational(v) for e, v in sorted(self.flow.items())}
            ),
        }


def max_flow_feasible(
    g: Graph,
    kappa: Mapping[Edge, Fraction],
    demand_set: Iterable[int],
    eta: Sequence[Fraction],
) -> FeasibilityResult:
    """Decide whether a pseudo-flow meets ``eta`` on ``demand_set`` within ``kappa``.

    Vertices outside the demand set are free sources. Vertices inside with
    negative demand may supply up to ``-eta_i``; those with positive demand must
    receive ``eta_i`` net inflow. Each edge touching the demand set carries at
    most ``kappa`` in either direction.

    Args:
        g: Graph
        kappa: Capacity per canonical edge; missing edges have capacity 0
        demand_set: Vertices whose net supply is constrained
        eta: Demand per vertex of ``g``

    Returns:
        FeasibilityResult with the flow (positive along ``u -> v``) or a witness
        set ``T`` inside the demand set with ``sum eta(T) > kappa(boundary T)``

    Raises:
        ValueError: On negative capacities or a demand vector of the wrong length
    """
    if len(eta) != g.vertex_count:
        raise ValueError(f"Demand vector has {len(eta)} entries for {g.vertex_count} vertices")
    negative = [e for e, c in kappa.items() if c < 0]
    if negative:
        raise ValueError(f"Negative capacity on edges {negative}")

    demand = sorted(set(demand_set))
    members = set(demand)
    required = sum((eta[i] for i in demand if eta[i] > 0), start=ZERO)
    if required == 0:
        return FeasibilityResult(feasible=True, flow={})

    edges = [e for e in g.incident_edges(members) if kappa.get(e, ZERO) > 0]
    big = sum(kappa.values(), start=ZERO) + required + 1

    network = nx.DiGraph()
    network.add_nodes_from([SOURCE, SINK, *demand])
    for u, v in edges:
        capacity = kappa[(u, v)]
        network.add_edge(u, v, capacity=capacity)
        network.add_edge(v, u, capacity=capacity)
        for outside in (u, v):
            if outside not in members:
                network.add_edge(SOURCE, outside, capacity=big)
    for i in demand:
        if eta[i] > 0:
            network.add_edge(i, SINK, capacity=eta[i])
        elif eta[i] < 0:
            network.add_edge(SOURCE, i, capacity=-eta[i])

    residual = edmonds_karp(network, SOURCE, SINK, capacity="capacity")
    if residual.graph["flow_value"] == required:
        flow = {
            (u, v): residual[u][v]["flow"]
            for u, v in edges
            if residual[u][v]["flow"]
        }
        return FeasibilityResult(feasible=True, flow=flow)

    reachable = {SOURCE}
    frontier = deque([SOURCE])
    while frontier:
        node = frontier.popleft()
        for neighbour, arc in residual[node].items():
            if neighbour not in reachable and arc["flow"] < arc["capacity"]:
                reachable.add(neighbour)
                frontier.append(neighbour)
    witness = frozenset(i for i in demand if i not in reachable)
    return FeasibilityResult(feasible=False, witness=witness)


def _lift_one(
    focus: int,
    g: Graph,
    dual_sc: Scale,
    eta: Sequence[Fraction],
    kappa: Mapping[Edge, Fraction],
) -> FeasibilityResult:
    result = max_flow_feasible(g, kappa, dual_sc.sets[focus], eta)
    result.focus = focus
    return result


def check_weighted_isoperimetric(
    g: Graph,
    dual_sc: Scale,
    eta: Sequence[Fraction],
    kappa: Mapping[Edge, Fraction],
    jobs: int = 1,
) -> FeasibilityResult:
    """Check every weighted isoperimetric inequality with one max-flow per set.

    Returns:
        A feasible result, or the first focus vertex with its violated set
    """
    dual_sc.check(g)
    for result in parallel_map(
        partial(_lift_one, g=g, dual_sc=dual_sc, eta=eta, kappa=kappa),
        range(g.vertex_count),
        jobs,
    ):
        if not result.feasible:
            return result
    return FeasibilityResult(feasible=True)


def lift_and_project(
    g: Graph,
    dual_sc: Scale,
    eta: Sequence[Fraction],
    kappa: Mapping[Edge, Fraction],
    jobs: int = 1,
) -> FlowCertificate:
    """Build one pseudo-flow per focus vertex for demands ``eta`` under ``kappa``.

    Raises:
        InfeasibleDemandError: With the focus vertex and violated set when some
            weighted isoperimetric inequality fails
    """
    dual_sc.check(g)
    flows: dict[int, dict[Edge, Fraction]] = {}
    results = parallel_map(
        partial(_lift_one, g=g, dual_sc=dual_sc, eta=eta, kappa=kappa),
        range(g.vertex_count),
        jobs,
    )
    for result in results:
        assert result.focus is not None
        if not result.feasible:
            assert result.witness is not None
            logger.info(
                "Lift failed", focus=result.focus, witness=sorted(result.witness)
            )
            raise InfeasibleDemandError(result.focus, result.witness)
        flows[result.focus] = result.flow or {}
    certificate = FlowCertificate(
        eta=tuple(Fraction(v) for v in eta),
        kappa={e: Fraction(c) for e, c in kappa.items()},
        flows=flows,
    )
    logger.debug(
        "Lifted certificate", vertices=g.vertex_count, objective=str(certificate.objective)
    )
    return certificate


__all__ = [
    "FeasibilityResult",
    "max_flow_feasible",
    "check_weighted_isoperimetric",
    "lift_and_project",
]
