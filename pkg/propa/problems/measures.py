"""Primal LPs: measure families, partitions of unity and the mean relaxation."""

from __future__ import annotations

from fractions import Fraction

from propa.config import get_logger_instance
from propa.exact.program import LinearProgram, Relation, Sense
from propa.graphs.base import Graph, Scale
from propa.problems.base import IndexedLp, ProblemKind

logger = get_logger_instance("propa.problems")


def _variation_rows(
    ilp: IndexedLp,
    left: int | None,
    right: int | None,
    diff_key: tuple[str | int, ...],
) -> int:
    """Add ``d >= |left - right|`` and return the column of ``d``.

    ``None`` stands for a variable fixed at zero.
    """
    column = ilp.add(diff_key)
    for sign in (1, -1):
        row: dict[int, Fraction] = {column: Fraction(-1)}
        if left is not None:
            row[left] = Fraction(sign)
        if right is not None:
            row[right] = Fraction(-sign)
        ilp.lp.add_constraint(row, Relation.LE, 0, f"{diff_key[0]}_{sign:+d}")
    return column


def build_measures(g: Graph, sc: Scale) -> IndexedLp:
    """Min ``e`` over probability measures ``xi_i`` on ``S_i`` with edge variation at most ``e``.

    Columns: ``x[i,j]`` for ``j`` in ``S_i``, ``e[u,v,k]`` for every edge and
    every ``k`` in ``S_u | S_v``, and the global ``e``.
    """
    sc.check(g)
    ilp = IndexedLp(LinearProgram(), {}, ProblemKind.MEASURES)
    for i, members in enumerate(sc.sets):
        for j in sorted(members):
            ilp.add(("x", i, j))
    for i, members in enumerate(sc.sets):
        ilp.lp.add_constraint(
            {ilp.column("x", i, j): 1 for j in members}, Relation.EQ, 1, f"mass_{i}"
        )
    epsilon = ilp.add(("e",))
    for u, v in g.edges:
        edge_total: dict[int, Fraction] = {epsilon: Fraction(-1)}
        for k in sorted(sc.sets[u] | sc.sets[v]):
            left = ilp.var_map.get(("x", v, k))
            right = ilp.var_map.get(("x", u, k))
            column = _variation_rows(ilp, left, right, ("e", u, v, k))
            edge_total[column] = Fraction(1)
        ilp.lp.add_constraint(edge_total, Relation.LE, 0, f"edge_{u}_{v}")
    ilp.lp.set_objective({epsilon: 1}, Sense.MIN)
    logger.debug(
        "Built measures LP",
        rows=ilp.lp.num_constraints,
        cols=ilp.lp.num_variables,
    )
    return ilp


def build_partition(g: Graph, sc: Scale) -> IndexedLp:
    """Min ``e`` over partitions of unity ``f_k`` supported in ``S_k``.

    The optimum equals ``build_measures(g, dual_scale(sc))``.
    """
    sc.check(g)
    ilp = IndexedLp(LinearProgram(), {}, ProblemKind.PARTITION)
    owners: list[list[int]] = [[] for _ in range(g.vertex_count)]
    for k, members in enumerate(sc.sets):
        for i in sorted(members):
            ilp.add(("f", k, i))
            owners[i].append(k)
    for i, tags in enumerate(owners):
        ilp.lp.add_constraint(
            {ilp.column("f", k, i): 1 for k in tags}, Relation.EQ, 1, f"unity_{i}"
        )
    epsilon = ilp.add(("e",))
    for u, v in g.edges:
        edge_total: dict[int, Fraction] = {epsilon: Fraction(-1)}
        for k in sorted(set(owners[u]) | set(owners[v])):
            left = ilp.var_map.get(("f", k, v))
            right = ilp.var_map.get(("f", k, u))
            column = _variation_rows(ilp, left, right, ("e", k, u, v))
            edge_total[column] = Fraction(1)
        ilp.lp.add_constraint(edge_total, Relation.LE, 0, f"edge_{u}_{v}")
    ilp.lp.set_objective({epsilon: 1}, Sense.MIN)
    return ilp


def build_mean_property_a(g: Graph, sc: Scale) -> IndexedLp:
    """Averaged relaxation: nonnegative ``n[i,j]`` (``j`` in ``S_i``) of total mass ``|V|``.

    Minimizes ``(1/|E|) * sum c[u,v,k]`` with ``c[u,v,k] >= |n[v,k] - n[u,k]|``.
    The optimum equals the uniform-flows optimum on the dual scale. Edgeless
    graphs have optimum 0 by convention.
    """
    sc.check(g)
    ilp = IndexedLp(LinearProgram(), {}, ProblemKind.MEAN_PROPERTY_A)
    for i, members in enumerate(sc.sets):
        for j in sorted(members):
            ilp.add(("n", i, j))
    ilp.lp.add_constraint(
        {column: 1 for _, column in ilp.items("n")},
        Relation.EQ,
        g.vertex_count,
        "total_mass",
    )
    if not g.edges:
        ilp.convention_optimum = Fraction(0)
        return ilp
    weight = Fraction(1, g.edge_count)
    objective: dict[int, Fraction] = {}
    for u, v in g.edges:
        for k in sorted(sc.sets[u] | sc.sets[v]):
            left = ilp.var_map.get(("n", v, k))
            right = ilp.var_map.get(("n", u, k))
            objective[_variation_rows(ilp, left, right, ("c", u, v, k))] = weight
    ilp.lp.set_objective(objective, Sense.MIN)
    return ilp


__all__ = ["build_measures", "build_partition", "build_mean_property_a"]
