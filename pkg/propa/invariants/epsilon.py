"""The property-A invariant epsilon at a scale, with certificates."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import partial
from typing import Any

from propa.config import get_logger_instance
from propa.errors import CertificateMismatchError, InvalidEmbeddingError
from propa.exact.program import LpSolution
from propa.exact.rational import format_rational
from propa.exact.simplex import PivotRule
from propa.flows.certificates import FlowCertificate, MeasureFamily
from propa.flows.maxflow import lift_and_project
from propa.flows.verify import verify_flow_certificate, verify_measure_family
from propa.graphs.base import Edge, Graph, Scale
from propa.graphs.metric import (
    ball_scale,
    components,
    dual_scale,
    induced_subgraph,
    is_convex_subgraph,
    truncated_family,
)
from propa.parallel import parallel_map
from propa.problems.base import IndexedLp
from propa.problems.extract import (
    demands_and_capacities,
    flow_certificate_from_solution,
    measure_family_from_solution,
)
from propa.problems.isoperimetric import (
    build_isoperimetric,
    build_isoperimetric_for_family,
)
from propa.problems.measures import build_measures
from propa.problems.pseudoflows import build_pseudo_flows
from propa.problems.subsets import enumerate_family_subsets, enumerate_subsets

logger = get_logger_instance("propa.epsilon")

ZERO = Fraction(0)


class Method(str, Enum):
    """How ``epsilon_at_scale`` computes its value."""

    PRIMAL = "primal"
    DUAL = "dual"
    BOTH = "both"
    LIFT = "lift"


def resolve_scale(g: Graph, s: int | Scale) -> Scale:
    """A ball radius becomes the ball scale; an explicit scale is checked."""
    if isinstance(s, Scale):
        s.check(g)
        return s
    return ball_scale(g, s)


@dataclass
class EpsilonReport:
    """Exact epsilon with whichever certificates the method produced."""

    epsilon: Fraction
    method: Method
    primal: MeasureFamily | None = None
    dual: FlowCertificate | None = None
    radius: int | None = None
    graph: str | None = None
    components: int = 1
    statistics: dict[str, Any] = field(default_factory=dict)

    def to_dict(self, include_statistics: bool = False) -> dict[str, Any]:
        """Convert to dictionary; timings only when asked for."""
        report: dict[str, Any] = {
            "kind": "epsilon",
            "graph": self.graph,
            "radius": self.radius,
            "method": self.method.value,
            "epsilon": format_rational(self.epsilon),
            "components": self.components,
        }
        if self.primal is not None:
            report["primal"] = self.primal.to_dict()
        if self.dual is not None:
            report["dual"] = self.dual.to_dict()
        if include_statistics:
            report["statistics"] = self.statistics
        return report


def solve_checked(
    ilp: IndexedLp, pivot_rule: PivotRule | None = None
) -> LpSolution:
    """Solve after the size check; anything but an optimum is an error."""
    ilp.check_size()
    solution = ilp.solve(pivot_rule=pivot_rule)
    if not solution.is_optimal:
        raise CertificateMismatchError(
            f"{ilp.problem_kind.value} LP ended {solution.status.value}"
        )
    return solution


def _check_certificates(
    g: Graph, sc: Scale, dual_sc: Scale, report: EpsilonReport
) -> None:
    problems: list[str] = []
    if report.primal is not None:
        problems += verify_measure_family(g, sc, report.primal).violations
    if report.dual is not None:
        problems += verify_flow_certificate(g, dual_sc, report.dual).violations
    if report.primal is not None and report.dual is not None:
        if report.primal.epsilon != report.dual.objective:
            problems.append(
                f"primal {report.primal.epsilon} differs from "
                f"dual {report.dual.objective}"
            )
    if problems:
        raise CertificateMismatchError("; ".join(problems))


def _solve_connected(
    g: Graph,
    sc: Scale,
    method: Method,
    jobs: int,
    pivot_rule: PivotRule | None,
) -> EpsilonReport:
    dual_sc = dual_scale(sc)
    report = EpsilonReport(epsilon=ZERO, method=method, radius=sc.radius, graph=g.name)
    if method in (Method.PRIMAL, Method.BOTH):
        ilp = build_measures(g, sc)
        solution = solve_checked(ilp, pivot_rule)
        report.primal = measure_family_from_solution(ilp, solution, g.vertex_count)
        report.epsilon = solution.objective_value
        report.statistics["primal"] = solution.statistics
    if method in (Method.DUAL, Method.BOTH):
        ilp = build_pseudo_flows(g, dual_sc)
        solution = solve_checked(ilp, pivot_rule)
        report.dual = flow_certificate_from_solution(ilp, solution, g.vertex_count)
        report.epsilon = solution.objective_value
        report.statistics["dual"] = solution.statistics
    if method is Method.LIFT:
        family = enumerate_subsets(g, dual_sc, connected_only=True)
        ilp = build_isoperimetric(g, dual_sc, family)
        solution = solve_checked(ilp, pivot_rule)
        eta, kappa = demands_and_capacities(ilp, solution, g.vertex_count)
        report.dual = lift_and_project(g, dual_sc, eta, kappa, jobs=jobs)
        report.epsilon = solution.objective_value
        report.statistics["isoperimetric"] = solution.statistics
        report.statistics["subsets"] = len(family)
    _check_certificates(g, sc, dual_sc, report)
    return report


def _splits_by_component(sc: Scale, parts: list[list[int]]) -> bool:
    home = {v: c for c, part in enumerate(parts) for v in part}
    return all(len({home[v] for v in members}) == 1 for members in sc.sets)


def _restrict_scale(sc: Scale, labels: list[int]) -> Scale:
    position = {v: i for i, v in enumerate(labels)}
    return Scale.from_sets(
        [frozenset(position[v] for v in sc.sets[label]) for label in labels],
        radius=sc.radius,
    )


def _combine(
    g: Graph,
    method: Method,
    radius: int | None,
    pieces: list[tuple[list[int], EpsilonReport]],
) -> EpsilonReport:
    """Report for a disjoint union from per-component reports.

    Measures are relabelled and joined; the dual certificate of the worst
    component is embedded with zero demand everywhere else.
    """
    worst_labels, worst = max(pieces, key=lambda piece: piece[1].epsilon)
    report = EpsilonReport(
        epsilon=worst.epsilon,
        method=method,
        radius=radius,
        graph=g.name,
        components=len(pieces),
        statistics={"components": [r.statistics for _, r in pieces]},
    )
    if all(r.primal is not None for _, r in pieces):
        xi: list[dict[int, Fraction]] = [{} for _ in range(g.vertex_count)]
        for labels, piece in pieces:
            assert piece.primal is not None
            for i, measure in enumerate(piece.primal.xi):
                xi[labels[i]] = {labels[j]: mass for j, mass in measure.items()}
        report.primal = MeasureFamily(xi=tuple(xi), epsilon=worst.epsilon)
    if worst.dual is not None:
        eta = [ZERO] * g.vertex_count
        for i, demand in enumerate(worst.dual.eta):
            eta[worst_labels[i]] = demand

        def relabel(edge: Edge) -> Edge:
            return (worst_labels[edge[0]], worst_labels[edge[1]])

        kappa: dict[Edge, Fraction] = {
            relabel(e): c for e, c in worst.dual.kappa.items()
        }
        flows = {
            worst_labels[k]: {relabel(e): a for e, a in flow.items()}
            for k, flow in worst.dual.flows.items()
        }
        report.dual = FlowCertificate(eta=tuple(eta), kappa=kappa, flows=flows)
    return report


def epsilon_at_scale(
    g: Graph,
    s: int | Scale,
    method: Method = Method.BOTH,
    jobs: int = 1,
    pivot_rule: PivotRule | None = None,
) -> EpsilonReport:
    """Exact epsilon of ``g`` at a ball radius or explicit scale.

    Disconnected graphs whose scale sets stay inside components are solved one
    component at a time; epsilon is the largest component value.

    Raises:
        LpSizeError: If an LP is larger than the configured ceiling
        EnumerationCapError: If the lift method meets an oversized set
        CertificateMismatchError: If certificates fail to verify or disagree
    """
    sc = resolve_scale(g, s)
    parts = components(g)
    if len(parts) > 1 and _splits_by_component(sc, parts):
        pieces = []
        for part in parts:
            sub, labels = induced_subgraph(g, part)
            piece = _solve_connected(
                sub, _restrict_scale(sc, labels), method, jobs, pivot_rule
            )
            pieces.append((labels, piece))
        report = _combine(g, method, sc.radius, pieces)
        _check_certificates(g, sc, dual_scale(sc), report)
    else:
        report = _solve_connected(g, sc, method, jobs, pivot_rule)
    logger.info(
        "Computed epsilon",
        graph=g.name,
        radius=sc.radius,
        method=method.value,
        epsilon=format_rational(report.epsilon),
    )
    return report


def _epsilon_value(g: Graph, s: int, method: Method) -> Fraction:
    return epsilon_at_scale(g, s, method=method).epsilon


def epsilon_sequence(
    graphs: Sequence[Graph], s: int, method: Method = Method.PRIMAL, jobs: int = 1
) -> list[Fraction]:
    """Epsilon at radius ``s`` for each graph, computed in parallel over graphs."""
    return parallel_map(partial(_epsilon_value, s=s, method=method), graphs, jobs)


@dataclass
class SubgraphCheck:
    """Values compared by ``subgraph_scale_inequality_check``."""

    holds: bool
    doubled_h: Fraction
    truncated: Fraction
    ambient_g: Fraction
    radius: int

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "holds": self.holds,
            "radius": self.radius,
            "epsilon_h_doubled": format_rational(self.doubled_h),
            "truncated": format_rational(self.truncated),
            "epsilon_g": format_rational(self.ambient_g),
        }


def truncated_isoperimetric_value(
    h: Graph, g: Graph, embedding: Sequence[int], s: int
) -> Fraction:
    """Isoperimetric optimum of ``h`` over subsets of the traces of ``g``'s ``s``-balls."""
    traces = truncated_family(h, g, embedding, s)
    family = enumerate_family_subsets(h, traces, connected_only=True)
    ilp = build_isoperimetric_for_family(h, family.subsets)
    return solve_checked(ilp, None).objective_value


def subgraph_scale_inequality_check(
    h: Graph, g: Graph, embedding: Sequence[int], s: int
) -> SubgraphCheck:
    """Solve ``eps(2s, h)``, the truncated value and ``eps(s, g)`` and compare them.

    Raises:
        InvalidEmbeddingError: If ``embedding`` does not make ``h`` a convex
            subgraph of ``g``
    """
    if not is_convex_subgraph(h, g, embedding):
        raise InvalidEmbeddingError("Embedding is not convex")
    doubled = epsilon_at_scale(h, 2 * s, method=Method.PRIMAL).epsilon
    truncated = truncated_isoperimetric_value(h, g, embedding, s)
    ambient = epsilon_at_scale(g, s, method=Method.PRIMAL).epsilon
    holds = doubled <= truncated <= ambient
    logger.info(
        "Subgraph check",
        radius=s,
        doubled=format_rational(doubled),
        truncated=format_rational(truncated),
        ambient=format_rational(ambient),
        holds=holds,
    )
    return SubgraphCheck(
        holds=holds, doubled_h=doubled, truncated=truncated, ambient_g=ambient, radius=s
    )


__all__ = [
    "Method",
    "resolve_scale",
    "solve_checked",
    "EpsilonReport",
    "epsilon_at_scale",
    "epsilon_sequence",
    "SubgraphCheck",
    "truncated_isoperimetric_value",
    "subgraph_scale_inequality_check",
]
