"""Cheeger constant and sparsest cut at a scale, and the uniform relaxations."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any

from propa.config import get_logger_instance, get_settings
from propa.errors import CertificateMismatchError
from propa.exact.rational import format_rational
from propa.flows.certificates import FlowCertificate, edge_key
from propa.graphs.base import Edge, Graph, Scale
from propa.graphs.metric import dual_scale
from propa.invariants.epsilon import resolve_scale, solve_checked
from propa.problems.base import ProblemKind
from propa.problems.extract import flow_certificate_from_solution
from propa.problems.measures import build_mean_property_a
from propa.problems.pseudoflows import build_uniform_demand_flows, build_uniform_flows
from propa.problems.subsets import enumerate_subsets

logger = get_logger_instance("propa.cheeger")

ZERO = Fraction(0)


class CheegerMethod(str, Enum):
    """How ``cheeger_at_scale`` finds its value."""

    LP = "lp"
    BRUTE_FORCE = "brute_force"


@dataclass
class CheegerReport:
    """Cheeger constant at a scale, with a minimizing set when one was searched for."""

    gamma: Fraction
    method: CheegerMethod
    witness: tuple[int, ...] | None = None
    boundary: int | None = None
    radius: int | None = None
    graph: str | None = None
    certificate: FlowCertificate | None = None

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        report: dict[str, Any] = {
            "kind": "cheeger",
            "graph": self.graph,
            "radius": self.radius,
            "method": self.method.value,
            "gamma": format_rational(self.gamma),
            "witness": None if self.witness is None else list(self.witness),
            "boundary": self.boundary,
        }
        if self.certificate is not None:
            report["certificate"] = self.certificate.to_dict()
        return report


@dataclass
class SparsestCutReport:
    """Sparsest cut for given capacities, with the capacities it was taken over."""

    value: Fraction
    witness: tuple[int, ...] | None
    kappa: dict[Edge, Fraction] = field(default_factory=dict)
    radius: int | None = None
    graph: str | None = None

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "kind": "sparsest_cut",
            "graph": self.graph,
            "radius": self.radius,
            "kappa": {
                edge_key(e): format_rational(c) for e, c in sorted(self.kappa.items())
            },
            "value": format_rational(self.value),
            "witness": None if self.witness is None else list(self.witness),
        }


def _minimize(
    subsets: Iterable[frozenset[int]],
    weight: Callable[[frozenset[int]], int | Fraction],
) -> tuple[Fraction, tuple[int, ...] | None]:
    """Smallest ``weight(T) / |T|``; ties go to smaller ``T``, then lexicographic order."""
    best: tuple[Fraction, int, tuple[int, ...]] | None = None
    for subset in subsets:
        members = tuple(sorted(subset))
        key = (Fraction(weight(subset), len(members)), len(members), members)
        if best is None or key < best:
            best = key
    if best is None:
        return ZERO, None
    return best[0], best[2]


def cheeger_at_scale(
    g: Graph,
    s: int | Scale,
    method: CheegerMethod = CheegerMethod.BRUTE_FORCE,
    cap: int | None = None,
) -> CheegerReport:
    """Minimum of ``|dT| / |T|`` over nonempty ``T`` inside a dual-scale set.

    Brute force searches connected subsets and returns a witness. The LP
    method rescales the uniform-flows optimum by ``|E| / |V|``.

    Raises:
        EnumerationCapError: If brute force meets a set above ``cap``
        ValueError: If the LP method is used on an edgeless graph
    """
    sc = resolve_scale(g, s)
    report = CheegerReport(gamma=ZERO, method=method, radius=sc.radius, graph=g.name)
    if method is CheegerMethod.LP:
        if not g.edges:
            raise ValueError("The LP method needs at least one edge")
        uniform = uniform_flows_at_scale(g, sc)
        report.gamma = uniform.value * g.edge_count / g.vertex_count
        report.certificate = uniform.certificate
        return report
    limit = cap if cap is not None else get_settings().brute_force_cap
    family = enumerate_subsets(g, dual_scale(sc), connected_only=True, cap=limit)
    gamma, witness = _minimize(family, lambda t: len(g.boundary(t)))
    report.gamma = gamma
    report.witness = witness
    report.boundary = None if witness is None else len(g.boundary(witness))
    logger.debug("Cheeger by enumeration", subsets=len(family), gamma=str(gamma))
    return report


def sparsest_cut_at_scale(
    g: Graph,
    s: int | Scale,
    kappa: Mapping[Edge, Fraction],
    cap: int | None = None,
) -> SparsestCutReport:
    """Minimum of ``kappa(dT) / |T|`` over nonempty ``T`` inside a dual-scale set.

    Raises:
        ValueError: If a capacity is negative
        EnumerationCapError: If a dual-scale set is above the enumeration cap
    """
    if any(c < 0 for c in kappa.values()):
        raise ValueError("Capacities must be nonnegative")
    sc = resolve_scale(g, s)
    family = enumerate_subsets(g, dual_scale(sc), connected_only=True, cap=cap)

    def cut(subset: frozenset[int]) -> Fraction:
        return sum((Fraction(kappa.get(e, ZERO)) for e in g.boundary(subset)), ZERO)

    value, witness = _minimize(family, cut)
    return SparsestCutReport(
        value=value,
        witness=witness,
        kappa={e: Fraction(c) for e, c in kappa.items()},
        radius=sc.radius,
        graph=g.name,
    )


@dataclass
class RelaxationReport:
    """Optimum of one of the uniform relaxations, with its flows if any."""

    kind: ProblemKind
    value: Fraction
    certificate: FlowCertificate | None = None
    details: dict[str, Fraction] = field(default_factory=dict)
    radius: int | None = None
    graph: str | None = None
    statistics: dict[str, Any] = field(default_factory=dict)

    def to_dict(self, include_statistics: bool = False) -> dict[str, Any]:
        """Convert to dictionary."""
        report: dict[str, Any] = {
            "graph": self.graph,
            "radius": self.radius,
            "kind": self.kind.value,
            "value": format_rational(self.value),
        }
        report.update({k: format_rational(v) for k, v in self.details.items()})
        if self.certificate is not None:
            report["certificate"] = self.certificate.to_dict()
        if include_statistics:
            report["statistics"] = self.statistics
        return report


def uniform_flows_at_scale(g: Graph, s: int | Scale) -> RelaxationReport:
    """Best ``|V| * eta`` for one demand when every edge has capacity ``1/|E|``."""
    sc = resolve_scale(g, s)
    ilp = build_uniform_flows(g, dual_scale(sc))
    solution = solve_checked(ilp)
    certificate = (
        flow_certificate_from_solution(ilp, solution, g.vertex_count)
        if ilp.convention_optimum is None
        else None
    )
    return RelaxationReport(
        kind=ProblemKind.UNIFORM_FLOWS,
        value=solution.objective_value,
        certificate=certificate,
        radius=sc.radius,
        graph=g.name,
        statistics=solution.statistics,
    )


def uniform_demand_at_scale(g: Graph, s: int | Scale) -> RelaxationReport:
    """Best ``|V| * eta`` for one demand with capacities chosen freely."""
    sc = resolve_scale(g, s)
    ilp = build_uniform_demand_flows(g, dual_scale(sc))
    solution = solve_checked(ilp)
    return RelaxationReport(
        kind=ProblemKind.UNIFORM_DEMAND_FLOWS,
        value=solution.objective_value,
        certificate=flow_certificate_from_solution(ilp, solution, g.vertex_count),
        radius=sc.radius,
        graph=g.name,
        statistics=solution.statistics,
    )


def mean_property_a_at_scale(g: Graph, s: int | Scale) -> RelaxationReport:
    """Averaged relaxation of epsilon.

    ``value`` is ``(1/|E|) * sum c``, equal to the uniform-flows optimum on the
    dual scale. ``total`` is ``sum c`` and ``per_vertex`` divides ``value`` by
    ``|V|``. The uniform-flows certificate of the same value is attached so
    the report can be checked without solving.

    Raises:
        CertificateMismatchError: If the two optima differ
    """
    sc = resolve_scale(g, s)
    ilp = build_mean_property_a(g, sc)
    solution = solve_checked(ilp)
    value = solution.objective_value
    uniform = uniform_flows_at_scale(g, sc)
    if uniform.value != value:
        raise CertificateMismatchError(
            f"Mean optimum {value} differs from uniform flows {uniform.value}"
        )
    total = value * g.edge_count
    per_vertex = value / g.vertex_count if g.vertex_count else ZERO
    return RelaxationReport(
        kind=ProblemKind.MEAN_PROPERTY_A,
        value=value,
        certificate=uniform.certificate,
        details={"total": total, "per_vertex": per_vertex},
        radius=sc.radius,
        graph=g.name,
        statistics=solution.statistics,
    )


__all__ = [
    "CheegerMethod",
    "CheegerReport",
    "SparsestCutReport",
    "RelaxationReport",
    "cheeger_at_scale",
    "sparsest_cut_at_scale",
    "uniform_flows_at_scale",
    "uniform_demand_at_scale",
    "mean_property_a_at_scale",
]
