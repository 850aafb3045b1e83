"""Weighted isoperimetric LP over enumerated subsets, and its covering dual."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from fractions import Fraction

from propa.config import get_logger_instance, get_settings
from propa.errors import EnumerationCapError
from propa.exact.program import LinearProgram, Relation, Sense
from propa.flows.certificates import PartitionFamily
from propa.graphs.base import Graph, Scale
from propa.problems.base import IndexedLp, ProblemKind, SubsetFamily

logger = get_logger_instance("propa.problems")

ZERO = Fraction(0)


def _check_family(dual_sc: Scale, family: SubsetFamily) -> None:
    for subset, owner in zip(family.subsets, family.owners, strict=True):
        if not 0 <= owner < dual_sc.size or not subset <= dual_sc.sets[owner]:
            raise ValueError(
                f"Subset {sorted(subset)} is not inside dual-scale set {owner}"
            )


def build_isoperimetric_for_family(
    g: Graph, subsets: Sequence[frozenset[int]]
) -> IndexedLp:
    """Max ``sum eta`` subject to ``sum_T eta <= kappa(dT)`` for each listed ``T``.

    Every vertex should lie in some listed subset, otherwise its demand is
    unbounded.
    """
    ilp = IndexedLp(LinearProgram(), {}, ProblemKind.ISOPERIMETRIC)
    demand = [ilp.add(("eta", i), lower=None) for i in range(g.vertex_count)]
    for u, v in g.edges:
        ilp.add(("kappa", u, v))
    ilp.lp.add_constraint(
        {column: 1 for _, column in ilp.items("kappa")}, Relation.LE, 1, "capacity"
    )
    for t, subset in enumerate(subsets):
        row: dict[int, Fraction] = {demand[i]: Fraction(1) for i in subset}
        for u, v in g.boundary(subset):
            row[ilp.column("kappa", u, v)] = Fraction(-1)
        ilp.lp.add_constraint(row, Relation.LE, 0, f"subset_{t}")
    ilp.lp.set_objective(dict.fromkeys(demand, 1), Sense.MAX)
    ilp.subsets = tuple(subsets)
    logger.debug(
        "Built isoperimetric LP",
        subsets=len(subsets),
        cols=ilp.lp.num_variables,
    )
    return ilp


def build_isoperimetric(g: Graph, dual_sc: Scale, family: SubsetFamily) -> IndexedLp:
    """Isoperimetric LP over a family enumerated from ``dual_sc``.

    Raises:
        ValueError: If a subset does not sit inside the set recorded as its owner
    """
    dual_sc.check(g)
    _check_family(dual_sc, family)
    return build_isoperimetric_for_family(g, family.subsets)


def build_isoperimetric_dual(
    g: Graph,
    dual_sc: Scale,
    family: SubsetFamily,
    allow_exponential: bool = False,
    cap: int | None = None,
) -> IndexedLp:
    """Min ``a`` over weights ``z_T >= 0`` covering each vertex exactly once.

    Each edge is cut with total weight at most ``a``. A positive ``z_T`` reads
    as the flat function ``z_T * chi_T`` of a partition of unity.

    Raises:
        EnumerationCapError: If the family is larger than the configured cap and
            ``allow_exponential`` is not set
    """
    dual_sc.check(g)
    _check_family(dual_sc, family)
    limit = cap if cap is not None else get_settings().dual_subset_cap
    if len(family) > limit and not allow_exponential:
        raise EnumerationCapError(None, len(family), limit)
    ilp = IndexedLp(LinearProgram(), {}, ProblemKind.ISOPERIMETRIC_DUAL)
    weights = [ilp.add(("z", t)) for t in range(len(family))]
    spread = ilp.add(("a",))
    for i in range(g.vertex_count):
        ilp.lp.add_constraint(
            {weights[t]: 1 for t, subset in enumerate(family.subsets) if i in subset},
            Relation.EQ,
            1,
            f"cover_{i}",
        )
    cuts: dict[tuple[int, int], list[int]] = {e: [] for e in g.edges}
    for t, subset in enumerate(family.subsets):
        for edge in g.boundary(subset):
            cuts[edge].append(weights[t])
    for (u, v), columns in cuts.items():
        row: dict[int, Fraction] = {c: Fraction(1) for c in columns}
        row[spread] = Fraction(-1)
        ilp.lp.add_constraint(row, Relation.LE, 0, f"cut_{u}_{v}")
    ilp.lp.set_objective({spread: 1}, Sense.MIN)
    ilp.subsets = family.subsets
    return ilp


def flat_partition_from_z(
    g: Graph,
    dual_sc: Scale,
    z: Mapping[frozenset[int], Fraction],
    a: Fraction,
) -> PartitionFamily:
    """Flat partition of unity ``{z_T * chi_T}`` tagged with the first set holding ``T``.

    Raises:
        ValueError: If some weight is negative, some ``T`` fits in no dual-scale
            set, the weights do not cover every vertex exactly once, or an edge is
            cut by more than ``a``
    """
    functions: list[tuple[int, dict[int, Fraction]]] = []
    cover = [ZERO] * g.vertex_count
    for subset, weight in sorted(z.items(), key=lambda item: sorted(item[0])):
        if weight < 0:
            raise ValueError(f"Negative weight {weight} on {sorted(subset)}")
        if not weight:
            continue
        tag = next((k for k, s in enumerate(dual_sc.sets) if subset <= s), None)
        if tag is None:
            raise ValueError(f"Subset {sorted(subset)} fits in no dual-scale set")
        for i in subset:
            cover[i] += weight
        functions.append((tag, dict.fromkeys(sorted(subset), weight)))
    for i, total in enumerate(cover):
        if total != 1:
            raise ValueError(f"Vertex {i} is covered with total weight {total}")
    family = PartitionFamily(functions=tuple(functions), flat=True, variation=a)
    for edge in g.edges:
        if family.edge_variation(edge) > a:
            raise ValueError(f"Edge {edge[0]}-{edge[1]} is cut by more than {a}")
    return family


__all__ = [
    "build_isoperimetric_for_family",
    "build_isoperimetric",
    "build_isoperimetric_dual",
    "flat_partition_from_z",
]
