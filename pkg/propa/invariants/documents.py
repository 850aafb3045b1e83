"""Exact checks of every JSON document propa emits, dispatched on its kind."""

from __future__ import annotations

from collections.abc import Callable, Mapping
from fractions import Fraction
from typing import Any

from propa.config import get_logger_instance
from propa.errors import InfeasibleDemandError
from propa.exact.rational import parse_rational
from propa.flows.certificates import (
    FlowCertificate,
    MeasureFamily,
    VerificationReport,
    certificate_from_dict,
    parse_edge_key,
)
from propa.flows.maxflow import lift_and_project
from propa.flows.verify import (
    verify_flow_certificate,
    verify_measure_family,
    verify_partition_family,
)
from propa.graphs.base import Graph, Scale
from propa.graphs.metric import dual_scale
from propa.invariants.formulas import (
    cube_epsilon_formula,
    girth_cheeger_formula,
    girth_epsilon_formula,
    girth_epsilon_scale_limit,
    tree_isoperimetric_number,
)

logger = get_logger_instance("propa.documents")

ZERO = Fraction(0)

CERTIFICATE_KINDS = frozenset({"measures", "flows", "partition"})
GRAPH_FREE_KINDS = frozenset({"formula", "sequence"})

Checks = dict[str, VerificationReport]


def _outcome(found: list[str], value: Fraction | None = None) -> VerificationReport:
    return VerificationReport(valid=not found, violations=found, value=value)


def _equal(name: str, claimed: Fraction, actual: Fraction) -> VerificationReport:
    if claimed == actual:
        return _outcome([], actual)
    return _outcome([f"{name} is {claimed} but should be {actual}"], actual)


def needs_graph(data: Mapping[str, Any]) -> bool:
    """Whether checking ``data`` takes a graph and a scale."""
    return data.get("kind") not in GRAPH_FREE_KINDS


def _certificate(
    g: Graph, sc: Scale, document: Mapping[str, Any]
) -> VerificationReport:
    certificate = certificate_from_dict(document)
    if isinstance(certificate, MeasureFamily):
        return verify_measure_family(g, sc, certificate)
    if isinstance(certificate, FlowCertificate):
        claimed = document.get("objective")
        return verify_flow_certificate(
            g,
            dual_scale(sc),
            certificate,
            claimed_objective=None if claimed is None else parse_rational(claimed),
        )
    return verify_partition_family(g, sc, certificate)


def _subset_placement(sc: Scale, subset: frozenset[int]) -> list[str]:
    if any(subset <= members for members in dual_scale(sc).sets):
        return []
    return [f"set {sorted(subset)} lies in no dual-scale set"]


def _epsilon(g: Graph, sc: Scale, data: Mapping[str, Any]) -> Checks:
    checks: Checks = {}
    claimed = parse_rational(data["epsilon"])
    primal_value = dual_value = None
    if isinstance(data.get("primal"), dict):
        checks["primal"] = _certificate(g, sc, data["primal"])
        primal_value = parse_rational(data["primal"]["epsilon"])
        checks["primal_value"] = _equal("epsilon", claimed, primal_value)
    if isinstance(data.get("dual"), dict):
        checks["dual"] = _certificate(g, sc, data["dual"])
        dual_value = FlowCertificate.from_dict(data["dual"]).objective
        checks["dual_value"] = _equal("epsilon", claimed, dual_value)
    if primal_value is not None and dual_value is not None:
        same = primal_value == dual_value
        checks["duality"] = _outcome(
            [] if same else [f"primal {primal_value} and dual {dual_value} differ"]
        )
    return checks


def _uniform_certificate(
    g: Graph,
    sc: Scale,
    document: Mapping[str, Any],
    value: Fraction,
    fixed_capacities: bool,
) -> Checks:
    """Flows of a single shared demand reaching ``value`` in total."""
    checks: Checks = {"certificate": _certificate(g, sc, document)}
    certificate = FlowCertificate.from_dict(document)
    checks["value"] = _equal("value", value, certificate.objective)
    shape: list[str] = []
    if len(set(certificate.eta)) > 1:
        shape.append("demands differ between vertices")
    if fixed_capacities:
        bound = Fraction(1, g.edge_count)
        for edge in g.edges:
            if certificate.kappa.get(edge, ZERO) != bound:
                shape.append(f"edge {edge[0]}-{edge[1]} does not have capacity {bound}")
    checks["uniformity"] = _outcome(shape)
    return checks


def _edgeless(g: Graph, value: Fraction) -> Checks:
    found: list[str] = []
    if g.edges:
        found.append("no flows given for a graph with edges")
    if value != 0:
        found.append(f"edgeless graphs have value 0, not {value}")
    return {"convention": _outcome(found, ZERO)}


def _relaxation(g: Graph, sc: Scale, data: Mapping[str, Any]) -> Checks:
    kind = data["kind"]
    value = parse_rational(data["value"])
    document = data.get("certificate")
    if not isinstance(document, dict):
        return _edgeless(g, value)
    checks = _uniform_certificate(
        g, sc, document, value, fixed_capacities=kind != "uniform_demand_flows"
    )
    if kind == "mean_property_a":
        checks["total"] = _equal("total", parse_rational(data["total"]), value * g.edge_count)
        checks["per_vertex"] = _equal(
            "per_vertex", parse_rational(data["per_vertex"]), value / g.vertex_count
        )
    return checks


def _cheeger(g: Graph, sc: Scale, data: Mapping[str, Any]) -> Checks:
    gamma = parse_rational(data["gamma"])
    document = data.get("certificate")
    if isinstance(document, dict):
        objective = FlowCertificate.from_dict(document).objective
        checks = _uniform_certificate(g, sc, document, objective, fixed_capacities=True)
        checks["gamma"] = _equal(
            "gamma", gamma, objective * g.edge_count / g.vertex_count
        )
        return checks
    if data.get("witness") is None:
        return {"witness": _outcome([] if gamma == 0 else [f"no witness for gamma {gamma}"])}
    witness = frozenset(int(v) for v in data["witness"])
    boundary = len(g.boundary(witness))
    found = _subset_placement(sc, witness)
    ratio = Fraction(boundary, len(witness))
    if ratio != gamma:
        found.append(f"witness has ratio {ratio}, report says {gamma}")
    if data.get("boundary") is not None and int(data["boundary"]) != boundary:
        found.append(f"witness boundary is {boundary}, report says {data['boundary']}")
    return {"witness": _outcome(found, ratio)}


def _sparsest(g: Graph, sc: Scale, data: Mapping[str, Any]) -> Checks:
    value = parse_rational(data["value"])
    kappa = {parse_edge_key(k): parse_rational(v) for k, v in data["kappa"].items()}
    found = [
        f"capacity {c} on {'non-edge' if e not in g.edge_index else 'edge'} {e[0]}-{e[1]}"
        for e, c in sorted(kappa.items())
        if c < 0 or e not in g.edge_index
    ]
    if data.get("witness") is None:
        if value != 0:
            found.append(f"no witness for value {value}")
        return {"witness": _outcome(found)}
    witness = frozenset(int(v) for v in data["witness"])
    found.extend(_subset_placement(sc, witness))
    cut = sum((kappa.get(e, ZERO) for e in g.boundary(witness)), ZERO)
    ratio = cut / len(witness)
    if ratio != value:
        found.append(f"witness has ratio {ratio}, report says {value}")
    return {"witness": _outcome(found, ratio)}


def _reduced_symmetric(g: Graph, sc: Scale, data: Mapping[str, Any]) -> Checks:
    """Spread orbit values over the graph and lift them to full flows."""
    value = parse_rational(data["value"])
    found: list[str] = []
    eta = [ZERO] * g.vertex_count
    for orbit, demand in zip(data["vertex_orbits"], data["eta"], strict=True):
        for v in orbit:
            eta[int(v)] = parse_rational(demand)
    kappa = {
        parse_edge_key(key): parse_rational(capacity)
        for orbit, capacity in zip(data["edge_orbits"], data["kappa"], strict=True)
        for key in orbit
    }
    covered = {v for orbit in data["vertex_orbits"] for v in orbit}
    if covered != set(range(g.vertex_count)) or set(kappa) != set(g.edges):
        found.append("orbits do not partition the vertices and edges")
    checks: Checks = {"orbits": _outcome(found)}
    try:
        lifted = lift_and_project(g, dual_scale(sc), tuple(eta), kappa)
    except InfeasibleDemandError as exc:
        checks["certificate"] = _outcome([str(exc)])
        return checks
    checks["certificate"] = verify_flow_certificate(g, dual_scale(sc), lifted)
    checks["value"] = _equal("value", value, lifted.objective)
    return checks


def _lift_failure(g: Graph, sc: Scale, data: Mapping[str, Any]) -> Checks:
    """The violated set really carries more demand than its boundary allows."""
    focus = int(data["focus"])
    witness = frozenset(int(v) for v in data["witness"])
    given = FlowCertificate.from_dict(data)
    found: list[str] = []
    if not witness or not witness <= dual_scale(sc).sets[focus]:
        found.append(f"violated set {sorted(witness)} is not inside the set of focus {focus}")
    demand = sum((given.eta[v] for v in witness), ZERO)
    cut = sum((given.kappa.get(e, ZERO) for e in g.boundary(witness)), ZERO)
    if demand <= cut:
        found.append(f"demand {demand} fits through boundary capacity {cut}")
    return {"witness": _outcome(found, demand - cut)}


def _formula(data: Mapping[str, Any]) -> Checks:
    name = data["formula"]
    value = parse_rational(data["value"])
    if name == "cube":
        actual = cube_epsilon_formula(int(data["n"]), int(data["s"]))
    elif name == "girth":
        actual = girth_epsilon_formula(int(data["d"]), int(data["s"]))
    elif name == "girth-cheeger":
        actual = girth_cheeger_formula(int(data["d"]), int(data["s"]))
    elif name == "tree":
        actual = tree_isoperimetric_number(int(data["d"]), int(data["n"]), int(data["k"]))
    else:
        raise ValueError(f"Unknown formula {name!r}")
    return {"value": _equal("value", value, actual)}


def _cube_dimension(label: str) -> int:
    family, _, dimension = label.partition(":")
    if family != "hypercube" or not dimension.isdigit():
        raise ValueError(f"Expected a hypercube label, got {label!r}")
    return int(dimension)


def _sequence(data: Mapping[str, Any]) -> Checks:
    """Recompute every entry from the closed forms."""
    name = data["sequence"]
    expected: list[Fraction]
    checks: Checks = {}
    if name == "cubes":
        scale = int(data["scale"])
        expected = [cube_epsilon_formula(_cube_dimension(g), scale) for g in data["graphs"]]
    elif name == "cube-unions":
        scale = int(data["scale"])
        expected = [
            max(cube_epsilon_formula(_cube_dimension(part), scale) for part in g.split("+"))
            for g in data["graphs"]
        ]
    elif name == "girth-s":
        d = int(data["d"])
        expected = [
            girth_epsilon_formula(d, int(label.removeprefix("s="))) for label in data["graphs"]
        ]
        checks["limit"] = _equal(
            "limit", parse_rational(data["limit"]), girth_epsilon_scale_limit(d)
        )
    else:
        raise ValueError(f"Unknown sequence {name!r}")
    values = [parse_rational(v) for v in data["values"]]
    found = [
        f"{label}: {claimed} but should be {actual}"
        for label, claimed, actual in zip(data["graphs"], values, expected, strict=True)
        if claimed != actual
    ]
    checks["values"] = _outcome(found)
    return checks


_GRAPH_CHECKS: dict[str, Callable[[Graph, Scale, Mapping[str, Any]], Checks]] = {
    "epsilon": _epsilon,
    "uniform_flows": _relaxation,
    "uniform_demand_flows": _relaxation,
    "mean_property_a": _relaxation,
    "cheeger": _cheeger,
    "sparsest_cut": _sparsest,
    "reduced_symmetric": _reduced_symmetric,
    "lift_failure": _lift_failure,
}


def verify_document(
    data: Mapping[str, Any], g: Graph | None = None, sc: Scale | None = None
) -> Checks:
    """Check a report or certificate document exactly, without solving an LP.

    Certificates are checked as they stand. Reports have their claimed values
    recomputed from whatever they carry: embedded certificates, witness sets,
    orbit values or the closed forms.

    Args:
        data: Parsed JSON document with a ``"kind"`` entry
        g: Graph the document was computed on; unused by formulas and sequences
        sc: Scale the document was computed at

    Returns:
        One verification report per check, keyed by check name

    Raises:
        ValueError: If the kind is unknown, the graph is missing, or the
            document holds nothing to verify
    """
    kind = data.get("kind")
    if kind is None:
        raise ValueError("Document holds nothing to verify")
    if kind not in GRAPH_FREE_KINDS | CERTIFICATE_KINDS | _GRAPH_CHECKS.keys():
        raise ValueError(f"Unknown document kind {kind!r}")
    if needs_graph(data) and (g is None or sc is None):
        raise ValueError(f"Checking a {kind!r} document needs its graph")
    try:
        if kind == "formula":
            checks = _formula(data)
        elif kind == "sequence":
            checks = _sequence(data)
        elif kind in CERTIFICATE_KINDS:
            checks = {"certificate": _certificate(g, sc, data)}  # type: ignore[arg-type]
        else:
            checks = _GRAPH_CHECKS[kind](g, sc, data)  # type: ignore[arg-type]
    except (KeyError, IndexError, TypeError) as exc:
        raise ValueError(f"Malformed {kind!r} document: {exc!r}") from exc
    if not checks:
        raise ValueError("Document holds nothing to verify")
    logger.debug(
        "Verified document",
        kind=kind,
        failed=[name for name, report in checks.items() if not report.valid],
    )
    return checks


__all__ = ["CERTIFICATE_KINDS", "needs_graph", "verify_document"]
