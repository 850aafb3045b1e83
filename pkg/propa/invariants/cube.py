"""Explicit optimal certificates for cube graphs."""

from __future__ import annotations

from fractions import Fraction

from propa.exact.rational import binomial
from propa.flows.certificates import FlowCertificate, MeasureFamily
from propa.graphs.base import Edge
from propa.graphs.generators import hypercube
from propa.graphs.metric import ball_scale
from propa.invariants.formulas import ball_volume


def cube_primal_certificate(n: int, s: int) -> MeasureFamily:
    """Uniform measures on the ``s``-balls of the ``n``-cube."""
    g = hypercube(n)
    return MeasureFamily.uniform(g, ball_scale(g, s))


def cube_dual_certificate(n: int, s: int) -> FlowCertificate:
    """Symmetric pseudo-flows achieving ``cube_epsilon_formula(n, s)``.

    Every edge gets capacity ``1/|E|``. Around each focus the flow enters the
    ``s``-ball through every edge of its boundary at full capacity, then each
    sphere passes inward exactly what the smaller ball needs, shared equally
    over the edges between consecutive spheres.

    Raises:
        ValueError: Unless ``0 <= s < n``
    """
    if not 0 <= s < n:
        raise ValueError(f"Need 0 <= s < n, got n={n}, s={s}")
    g = hypercube(n)
    capacity = Fraction(1, g.edge_count)
    demand = Fraction(binomial(n, s + 1) * (s + 1), g.edge_count * ball_volume(n, s))
    # share[m] runs from the (m+1)-sphere to the m-sphere, per edge
    share = [
        demand * ball_volume(n, m) / (binomial(n, m + 1) * (m + 1))
        for m in range(s + 1)
    ]
    flows: dict[int, dict[Edge, Fraction]] = {}
    for focus in range(g.vertex_count):
        flow: dict[Edge, Fraction] = {}
        for u, v in g.edges:
            du = (u ^ focus).bit_count()
            dv = (v ^ focus).bit_count()
            inner = min(du, dv)
            if inner > s:
                continue
            flow[(u, v)] = -share[inner] if dv > du else share[inner]
        flows[focus] = flow
    return FlowCertificate(
        eta=(demand,) * g.vertex_count,
        kappa=dict.fromkeys(g.edges, capacity),
        flows=flows,
    )


__all__ = ["cube_primal_certificate", "cube_dual_certificate"]
