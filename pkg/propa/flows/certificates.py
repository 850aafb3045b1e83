"""Certificate bundles: measure families, pseudo-flow certificates, partitions."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from propa.exact.rational import format_rational, parse_rational
from propa.graphs.base import Edge, Graph, Scale

ZERO = Fraction(0)


def edge_key(edge: Edge) -> str:
    """JSON key ``"u-v"`` of a canonical edge."""
    return f"{edge[0]}-{edge[1]}"


def parse_edge_key(key: str) -> Edge:
    """Inverse of ``edge_key``; the pair is returned canonically oriented."""
    head, sep, tail = key.partition("-")
    if not sep:
        raise ValueError(f"Edge key {key!r} must look like 'u-v'")
    u, v = int(head), int(tail)
    if u == v:
        raise ValueError(f"Edge key {key!r} is a self-loop")
    return (u, v) if u < v else (v, u)


def l1_distance(a: Mapping[int, Fraction], b: Mapping[int, Fraction]) -> Fraction:
    """``sum |a(j) - b(j)|`` over the union of supports."""
    return sum(
        (abs(a.get(j, ZERO) - b.get(j, ZERO)) for j in set(a) | set(b)), start=ZERO
    )


def net_supplies(flow: Mapping[Edge, Fraction]) -> dict[int, Fraction]:
    """Inflow minus outflow per vertex; positive values run along ``u -> v``."""
    supply: dict[int, Fraction] = {}
    for (u, v), amount in flow.items():
        supply[v] = supply.get(v, ZERO) + amount
        supply[u] = supply.get(u, ZERO) - amount
    return supply


def _rational_map(data: Mapping[str, Any]) -> dict[int, Fraction]:
    return {int(k): parse_rational(v) for k, v in data.items()}


def _format_map(data: Mapping[int, Fraction]) -> dict[str, str]:
    return {str(k): format_rational(v) for k, v in sorted(data.items())}


@dataclass(frozen=True)
class MeasureFamily:
    """Probability measures ``xi_i`` supported in ``S_i`` with variation ``epsilon``."""

    xi: tuple[dict[int, Fraction], ...]
    epsilon: Fraction

    @classmethod
    def uniform(cls, g: Graph, sc: Scale) -> MeasureFamily:
        """Normalized indicator of each scale set, with its exact variation."""
        xi = tuple(
            {j: Fraction(1, len(members)) for j in members} for members in sc.sets
        )
        return cls(xi=xi, epsilon=max_edge_variation(g, xi))

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "kind": "measures",
            "epsilon": format_rational(self.epsilon),
            "xi": {str(i): _format_map(m) for i, m in enumerate(self.xi)},
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> MeasureFamily:
        entries = data["xi"]
        xi = tuple(_rational_map(entries[str(i)]) for i in range(len(entries)))
        return cls(xi=xi, epsilon=parse_rational(data["epsilon"]))


def max_edge_variation(
    g: Graph, xi: tuple[Mapping[int, Fraction], ...]
) -> Fraction:
    """Largest ``||xi_u - xi_v||_1`` over the edges of ``g``."""
    return max((l1_distance(xi[u], xi[v]) for u, v in g.edges), default=ZERO)


@dataclass(frozen=True)
class FlowCertificate:
    """Demands ``eta``, capacities ``kappa`` and one pseudo-flow per focus vertex."""

    eta: tuple[Fraction, ...]
    kappa: dict[Edge, Fraction]
    flows: dict[int, dict[Edge, Fraction]] = field(default_factory=dict)

    @property
    def objective(self) -> Fraction:
        """Total demand ``sum eta_i``."""
        return sum(self.eta, start=ZERO)

    @property
    def total_capacity(self) -> Fraction:
        return sum(self.kappa.values(), start=ZERO)

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "kind": "flows",
            "objective": format_rational(self.objective),
            "eta": {str(i): format_rational(v) for i, v in enumerate(self.eta)},
            "kappa": {
                edge_key(e): format_rational(v) for e, v in sorted(self.kappa.items())
            },
            "flows": {
                str(k): {
                    edge_key(e): format_rational(v) for e, v in sorted(flow.items())
                }
                for k, flow in sorted(self.flows.items())
            },
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> FlowCertificate:
        eta_entries = data["eta"]
        eta = tuple(parse_rational(eta_entries[str(i)]) for i in range(len(eta_entries)))
        kappa = {parse_edge_key(k): parse_rational(v) for k, v in data["kappa"].items()}
        flows = {
            int(k): {parse_edge_key(e): parse_rational(v) for e, v in flow.items()}
            for k, flow in data.get("flows", {}).items()
        }
        return cls(eta=eta, kappa=kappa, flows=flows)


@dataclass(frozen=True)
class PartitionFamily:
    """Nonnegative functions summing to one, each tagged with its scale set."""

    functions: tuple[tuple[int, dict[int, Fraction]], ...]
    flat: bool
    variation: Fraction

    def edge_variation(self, edge: Edge) -> Fraction:
        """``sum_f |f(u) - f(v)|`` on the edge ``(u, v)``."""
        u, v = edge
        return sum(
            (abs(f.get(u, ZERO) - f.get(v, ZERO)) for _, f in self.functions),
            start=ZERO,
        )

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "kind": "partition",
            "flat": self.flat,
            "variation": format_rational(self.variation),
            "functions": [
                {"tag": tag, "values": _format_map(f)} for tag, f in self.functions
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> PartitionFamily:
        functions = tuple(
            (int(item["tag"]), _rational_map(item["values"]))
            for item in data["functions"]
        )
        return cls(
            functions=functions,
            flat=bool(data.get("flat", False)),
            variation=parse_rational(data["variation"]),
        )


Certificate = MeasureFamily | FlowCertificate | PartitionFamily


def certificate_from_dict(data: Mapping[str, Any]) -> Certificate:
    """Dispatch on the ``"kind"`` entry of a certificate JSON document."""
    kind = data.get("kind")
    if kind == "measures":
        return MeasureFamily.from_dict(data)
    if kind == "flows":
        return FlowCertificate.from_dict(data)
    if kind == "partition":
        return PartitionFamily.from_dict(data)
    raise ValueError(f"Unknown certificate kind {kind!r}")


@dataclass
class VerificationReport:
    """Outcome of an exact certificate check."""

    valid: bool
    violations: list[str] = field(default_factory=list)
    value: Fraction | None = None
    metadata: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "valid": self.valid,
            "violations": self.violations,
            "value": None if self.value is None else format_rational(self.value),
            "metadata": self.metadata,
        }


__all__ = [
    "edge_key",
    "parse_edge_key",
    "l1_distance",
    "net_supplies",
    "max_edge_variation",
    "MeasureFamily",
    "FlowCertificate",
    "PartitionFamily",
    "Certificate",
    "certificate_from_dict",
    "VerificationReport",
]
