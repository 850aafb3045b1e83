"""Dual LPs over pseudo-flows: one flow per focus vertex under shared capacities."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from fractions import Fraction

from propa.config import get_logger_instance
from propa.exact.program import LinearProgram, Relation, Sense
from propa.graphs.base import Edge, Graph, Scale
from propa.problems.base import IndexedLp, ProblemKind

logger = get_logger_instance("propa.problems")

ONE = Fraction(1)


def _supply_rows(
    ilp: IndexedLp,
    g: Graph,
    focus: int,
    members: Iterable[int],
    demand: Mapping[int, int],
) -> None:
    """Add ``eta - sigma(focus, i) <= 0`` for each ``i`` in ``members``.

    ``demand[i]`` is the column of the demand for vertex ``i``; the net supply
    ``sigma`` is inflow minus outflow with flow positive along ``u -> v``.
    """
    for i in sorted(members):
        row: dict[int, Fraction] = {demand[i]: ONE}
        for neighbour in g.adjacency[i]:
            u, v = (neighbour, i) if neighbour < i else (i, neighbour)
            column = ilp.var_map.get(("phi", focus, u, v))
            if column is None:
                continue
            row[column] = row.get(column, Fraction(0)) + (-ONE if v == i else ONE)
        ilp.lp.add_constraint(row, Relation.LE, 0, f"supply_{focus}_{i}")


def _flow_edges(g: Graph, members: frozenset[int]) -> list[Edge]:
    return [e for e in g.edges if e[0] in members or e[1] in members]


def _add_capacities(ilp: IndexedLp, g: Graph) -> None:
    for u, v in g.edges:
        ilp.add(("kappa", u, v))
    ilp.lp.add_constraint(
        {column: 1 for _, column in ilp.items("kappa")}, Relation.LE, 1, "capacity"
    )


def _add_capped_flows(ilp: IndexedLp, g: Graph, dual_sc: Scale) -> None:
    """Free ``phi[k,u,v]`` with ``|phi| <= kappa[u,v]`` on edges touching each set."""
    for k, members in enumerate(dual_sc.sets):
        for u, v in _flow_edges(g, members):
            phi = ilp.add(("phi", k, u, v), lower=None)
            kappa = ilp.column("kappa", u, v)
            ilp.lp.add_constraint({phi: 1, kappa: -1}, Relation.LE, 0)
            ilp.lp.add_constraint({phi: -1, kappa: -1}, Relation.LE, 0)


def build_pseudo_flows(g: Graph, dual_sc: Scale) -> IndexedLp:
    """Max ``sum eta`` over demands routable in every dual-scale set.

    Columns: free ``eta[i]``, ``kappa[u,v] >= 0`` with total at most 1, and
    free ``phi[k,u,v]`` on edges meeting ``S'_k`` bounded by the capacities.
    """
    dual_sc.check(g)
    ilp = IndexedLp(LinearProgram(), {}, ProblemKind.PSEUDO_FLOWS)
    demand = {i: ilp.add(("eta", i), lower=None) for i in range(g.vertex_count)}
    _add_capacities(ilp, g)
    _add_capped_flows(ilp, g, dual_sc)
    for k, members in enumerate(dual_sc.sets):
        _supply_rows(ilp, g, k, members, demand)
    ilp.lp.set_objective(dict.fromkeys(demand.values(), 1), Sense.MAX)
    logger.debug(
        "Built pseudo-flows LP",
        rows=ilp.lp.num_constraints,
        cols=ilp.lp.num_variables,
    )
    return ilp


def build_uniform_flows(g: Graph, dual_sc: Scale) -> IndexedLp:
    """Max ``|V| * eta`` with a single demand and every capacity fixed at ``1/|E|``.

    Edgeless graphs have optimum 0 by convention.
    """
    dual_sc.check(g)
    ilp = IndexedLp(LinearProgram(), {}, ProblemKind.UNIFORM_FLOWS)
    eta = ilp.add(("eta",), lower=None)
    ilp.lp.set_objective({eta: g.vertex_count}, Sense.MAX)
    if not g.edges:
        ilp.convention_optimum = Fraction(0)
        return ilp
    bound = Fraction(1, g.edge_count)
    ilp.fixed_kappa = dict.fromkeys(g.edges, bound)
    for k, members in enumerate(dual_sc.sets):
        for u, v in _flow_edges(g, members):
            ilp.add(("phi", k, u, v), lower=-bound, upper=bound)
    demand = dict.fromkeys(range(g.vertex_count), eta)
    for k, members in enumerate(dual_sc.sets):
        _supply_rows(ilp, g, k, members, demand)
    return ilp


def build_fixed_capacity_flows(
    g: Graph, dual_sc: Scale, kappa: Mapping[Edge, Fraction]
) -> IndexedLp:
    """Max ``sum eta`` with capacities fixed in advance.

    Edges missing from ``kappa`` get capacity 0 and carry no flow.

    Raises:
        ValueError: If a capacity is negative or sits on a non-edge
    """
    dual_sc.check(g)
    for edge, capacity in kappa.items():
        if edge not in g.edge_index:
            raise ValueError(f"Capacity given for non-edge {edge[0]}-{edge[1]}")
        if capacity < 0:
            raise ValueError(f"Negative capacity {capacity} on edge {edge[0]}-{edge[1]}")
    ilp = IndexedLp(LinearProgram(), {}, ProblemKind.FIXED_CAPACITY_FLOWS)
    demand = {i: ilp.add(("eta", i), lower=None) for i in range(g.vertex_count)}
    for k, members in enumerate(dual_sc.sets):
        for u, v in _flow_edges(g, members):
            capacity = Fraction(kappa.get((u, v), 0))
            if capacity:
                ilp.add(("phi", k, u, v), lower=-capacity, upper=capacity)
    for k, members in enumerate(dual_sc.sets):
        _supply_rows(ilp, g, k, members, demand)
    ilp.lp.set_objective(dict.fromkeys(demand.values(), 1), Sense.MAX)
    ilp.fixed_kappa = {e: Fraction(c) for e, c in kappa.items() if c}
    return ilp


def build_uniform_demand_flows(g: Graph, dual_sc: Scale) -> IndexedLp:
    """Max ``|V| * eta`` with one shared demand and free capacities of total 1."""
    dual_sc.check(g)
    ilp = IndexedLp(LinearProgram(), {}, ProblemKind.UNIFORM_DEMAND_FLOWS)
    eta = ilp.add(("eta",), lower=None)
    _add_capacities(ilp, g)
    _add_capped_flows(ilp, g, dual_sc)
    demand = dict.fromkeys(range(g.vertex_count), eta)
    for k, members in enumerate(dual_sc.sets):
        _supply_rows(ilp, g, k, members, demand)
    ilp.lp.set_objective({eta: g.vertex_count}, Sense.MAX)
    return ilp


def build_single_column(g: Graph, s_set: Iterable[int]) -> IndexedLp:
    """Max ``eta`` routable from every vertex of ``s_set`` with unit capacities.

    The optimum is the isoperimetric number ``min |dT| / |T|`` over nonempty
    ``T`` inside ``s_set``.

    Raises:
        ValueError: If ``s_set`` is empty or names unknown vertices
    """
    members = frozenset(s_set)
    if not members:
        raise ValueError("Single-column LP needs a nonempty vertex set")
    if not all(0 <= v < g.vertex_count for v in members):
        raise ValueError(f"Vertex set {sorted(members)} leaves the graph")
    ilp = IndexedLp(LinearProgram(), {}, ProblemKind.SINGLE_COLUMN)
    eta = ilp.add(("eta",), lower=None)
    for u, v in _flow_edges(g, members):
        ilp.add(("phi", 0, u, v), lower=-1, upper=1)
    _supply_rows(ilp, g, 0, members, dict.fromkeys(members, eta))
    ilp.lp.set_objective({eta: 1}, Sense.MAX)
    return ilp


__all__ = [
    "build_pseudo_flows",
    "build_uniform_flows",
    "build_fixed_capacity_flows",
    "build_uniform_demand_flows",
    "build_single_column",
]
