"""Exact verifiers for measure families, flow certificates and partitions."""

from __future__ import annotations

from fractions import Fraction

from propa.errors import CertificateMismatchError
from propa.flows.certificates import (
    FlowCertificate,
    MeasureFamily,
    PartitionFamily,
    VerificationReport,
    l1_distance,
    net_supplies,
)
from propa.graphs.base import Graph, Scale
from propa.graphs.metric import dual_scale

ZERO = Fraction(0)
ONE = Fraction(1)


def verify_measure_family(g: Graph, sc: Scale, mf: MeasureFamily) -> VerificationReport:
    """Check nonnegativity, unit mass, supports and per-edge variation.

    Returns:
        VerificationReport whose value is the largest edge variation found
    """
    found: list[str] = []
    if len(mf.xi) != g.vertex_count or sc.size != g.vertex_count:
        return VerificationReport(
            valid=False,
            violations=[
                f"{len(mf.xi)} measures and {sc.size} scale sets "
                f"for {g.vertex_count} vertices"
            ],
        )
    for i, measure in enumerate(mf.xi):
        for j, mass in sorted(measure.items()):
            if mass < 0:
                found.append(f"xi_{i}({j}) = {mass} is negative")
            if mass and j not in sc.sets[i]:
                found.append(f"xi_{i}({j}) = {mass} lies outside S_{i}")
        total = sum(measure.values(), start=ZERO)
        if total != ONE:
            found.append(f"xi_{i} has total mass {total}")
    worst = ZERO
    for u, v in g.edges:
        variation = l1_distance(mf.xi[u], mf.xi[v])
        worst = max(worst, variation)
        if variation > mf.epsilon:
            found.append(f"edge {u}-{v} has variation {variation} > {mf.epsilon}")
    return VerificationReport(valid=not found, violations=found, value=worst)


def verify_flow_certificate(
    g: Graph,
    dual_sc: Scale,
    fc: FlowCertificate,
    claimed_objective: Fraction | None = None,
) -> VerificationReport:
    """Check capacities, flow bounds and net supplies of a pseudo-flow certificate.

    Violations name the focus vertex and edge, e.g. ``focus 3, edge 1-2``.
    """
    found: list[str] = []
    if len(fc.eta) != g.vertex_count or dual_sc.size != g.vertex_count:
        return VerificationReport(
            valid=False,
            violations=[
                f"{len(fc.eta)} demands and {dual_sc.size} scale sets "
                f"for {g.vertex_count} vertices"
            ],
        )
    for edge, capacity in sorted(fc.kappa.items()):
        if edge not in g.edge_index:
            found.append(f"capacity on non-edge {edge[0]}-{edge[1]}")
        if capacity < 0:
            found.append(f"edge {edge[0]}-{edge[1]} has negative capacity {capacity}")
    if fc.total_capacity > ONE:
        found.append(f"total capacity {fc.total_capacity} exceeds 1")

    for focus in sorted(fc.flows):
        if not 0 <= focus < g.vertex_count:
            found.append(f"flow for unknown focus vertex {focus}")
    for focus in range(g.vertex_count):
        flow = fc.flows.get(focus, {})
        for (u, v), amount in sorted(flow.items()):
            if (u, v) not in g.edge_index:
                found.append(f"focus {focus}, flow on non-edge {u}-{v}")
                continue
            capacity = fc.kappa.get((u, v), ZERO)
            if abs(amount) > capacity:
                found.append(
                    f"focus {focus}, edge {u}-{v}: |{amount}| exceeds capacity {capacity}"
                )
        supply = net_supplies(flow)
        for i in sorted(dual_sc.sets[focus]):
            if supply.get(i, ZERO) < fc.eta[i]:
                found.append(
                    f"focus {focus}, vertex {i}: supply {supply.get(i, ZERO)} "
                    f"below demand {fc.eta[i]}"
                )

    objective = fc.objective
    if claimed_objective is not None and claimed_objective != objective:
        found.append(f"claimed objective {claimed_objective} but sum eta is {objective}")
    return VerificationReport(valid=not found, violations=found, value=objective)


def verify_partition_family(
    g: Graph, sc: Scale, pf: PartitionFamily
) -> VerificationReport:
    """Check a partition of unity subordinated to ``sc``.

    Each function must sit inside the scale set named by its tag; flat
    families must also be constant on their supports.
    """
    found: list[str] = []
    totals = [ZERO] * g.vertex_count
    for position, (tag, function) in enumerate(pf.functions):
        if not 0 <= tag < sc.size:
            found.append(f"function {position} tagged with unknown set {tag}")
            continue
        support_values: set[Fraction] = set()
        for vertex, value in sorted(function.items()):
            if not 0 <= vertex < g.vertex_count:
                found.append(f"function {position} names unknown vertex {vertex}")
                continue
            if value < 0:
                found.append(f"function {position} is negative at {vertex}")
            if value and vertex not in sc.sets[tag]:
                found.append(f"function {position} leaves S_{tag} at {vertex}")
            if value:
                support_values.add(value)
            totals[vertex] += value
        if pf.flat and len(support_values) > 1:
            found.append(f"function {position} is not constant on its support")
    for vertex, total in enumerate(totals):
        if total != ONE:
            found.append(f"functions sum to {total} at vertex {vertex}")
    worst = ZERO
    for edge in g.edges:
        variation = pf.edge_variation(edge)
        worst = max(worst, variation)
        if variation > pf.variation:
            found.append(
                f"edge {edge[0]}-{edge[1]} has variation {variation} > {pf.variation}"
            )
    return VerificationReport(valid=not found, violations=found, value=worst)


def weak_duality_check(
    mf: MeasureFamily,
    fc: FlowCertificate,
    g: Graph | None = None,
    sc: Scale | None = None,
) -> bool:
    """Whether ``sum eta <= epsilon`` for a primal/dual pair.

    When ``g`` and ``sc`` are given both certificates are verified first, the
    flows against the dual scale of ``sc``.

    Raises:
        CertificateMismatchError: If the pair belongs to different instances
    """
    if len(mf.xi) != len(fc.eta):
        raise CertificateMismatchError(
            f"Measure family has {len(mf.xi)} vertices, flow certificate {len(fc.eta)}"
        )
    if g is not None and sc is not None:
        primal = verify_measure_family(g, sc, mf)
        dual = verify_flow_certificate(g, dual_scale(sc), fc)
        if not (primal.valid and dual.valid):
            raise CertificateMismatchError(
                "Certificates do not verify on the given instance: "
                + "; ".join(primal.violations + dual.violations)
            )
    return fc.objective <= mf.epsilon


__all__ = [
    "verify_measure_family",
    "verify_flow_certificate",
    "verify_partition_family",
    "weak_duality_check",
]
