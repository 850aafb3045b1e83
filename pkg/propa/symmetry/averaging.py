"""Symmetry averaging of isoperimetric solutions and the orbit-reduced LP."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from fractions import Fraction

from propa.config import get_logger_instance
from propa.errors import InfeasibleDemandError, ScaleNotInvariantError
from propa.exact.program import LinearProgram, LpSolution, Relation, Sense
from propa.flows.maxflow import check_weighted_isoperimetric
from propa.graphs.base import Edge, Graph, Scale
from propa.problems.base import IndexedLp, ProblemKind
from propa.problems.subsets import enumerate_subsets
from propa.symmetry.group import AutomorphismSet, check_automorphism, orbits

logger = get_logger_instance("propa.symmetry")

ZERO = Fraction(0)


def check_scale_invariant(g: Graph, sc: Scale, group: AutomorphismSet) -> None:
    """Require ``gamma(S_i) == S_gamma(i)`` for every generator.

    Raises:
        ScaleNotInvariantError: Naming the first generator and set that fail
    """
    sc.check(g)
    for position, generator in enumerate(group.permutations):
        perm = check_automorphism(g, generator)
        for i, members in enumerate(sc.sets):
            if frozenset(perm[v] for v in members) != sc.sets[perm[i]]:
                raise ScaleNotInvariantError(
                    f"Generator {position} maps S_{i} onto a set other than "
                    f"S_{perm[i]}"
                )


def average_solution(
    g: Graph,
    dual_sc: Scale,
    group: AutomorphismSet,
    eta: Sequence[Fraction],
    kappa: Mapping[Edge, Fraction],
    jobs: int = 1,
) -> tuple[tuple[Fraction, ...], dict[Edge, Fraction]]:
    """Average a feasible ``(eta, kappa)`` over the group.

    The group average of ``eta`` at ``i`` is the mean of ``eta`` over the orbit
    of ``i``, and likewise for ``kappa`` on edge orbits.

    Raises:
        ScaleNotInvariantError: If the group does not preserve ``dual_sc``
        InfeasibleDemandError: If the input violates an isoperimetric inequality
        ValueError: If capacities are negative or exceed total 1
    """
    check_scale_invariant(g, dual_sc, group)
    if any(c < 0 for c in kappa.values()) or sum(kappa.values(), start=ZERO) > 1:
        raise ValueError("Capacities must be nonnegative with total at most 1")
    feasibility = check_weighted_isoperimetric(g, dual_sc, eta, kappa, jobs=jobs)
    if not feasibility.feasible:
        assert feasibility.focus is not None and feasibility.witness is not None
        raise InfeasibleDemandError(feasibility.focus, feasibility.witness)

    vertex_orbits, edge_orbits = orbits(group, g)
    averaged_eta = [ZERO] * g.vertex_count
    for orbit in vertex_orbits:
        mean = sum((Fraction(eta[v]) for v in orbit), start=ZERO) / len(orbit)
        for v in orbit:
            averaged_eta[v] = mean
    averaged_kappa: dict[Edge, Fraction] = {}
    for edge_orbit in edge_orbits:
        total = sum((Fraction(kappa.get(e, ZERO)) for e in edge_orbit), start=ZERO)
        mean = total / len(edge_orbit)
        for edge in edge_orbit:
            averaged_kappa[edge] = mean
    return tuple(averaged_eta), averaged_kappa


def reduced_symmetric_lp(
    g: Graph,
    dual_sc: Scale,
    group: AutomorphismSet,
    connected_only: bool = True,
    cap: int | None = None,
) -> IndexedLp:
    """Isoperimetric LP with one demand per vertex orbit and one capacity per edge orbit.

    Columns are ``("eta", o)`` and ``("kappa", o)`` indexed by orbit position.
    Subsets giving identical rows, in particular subsets in one orbit, share a
    single constraint.

    Raises:
        EnumerationCapError: If a dual-scale set is too large to enumerate
        ScaleNotInvariantError: If the group does not preserve ``dual_sc``
    """
    check_scale_invariant(g, dual_sc, group)
    vertex_orbits, edge_orbits = orbits(group, g)
    vertex_orbit_of = {v: o for o, orbit in enumerate(vertex_orbits) for v in orbit}
    edge_orbit_of = {e: o for o, orbit in enumerate(edge_orbits) for e in orbit}

    ilp = IndexedLp(LinearProgram(), {}, ProblemKind.REDUCED_SYMMETRIC)
    demand = [ilp.add(("eta", o), lower=None) for o in range(len(vertex_orbits))]
    capacity = [ilp.add(("kappa", o)) for o in range(len(edge_orbits))]
    ilp.lp.add_constraint(
        {capacity[o]: len(orbit) for o, orbit in enumerate(edge_orbits)},
        Relation.LE,
        1,
        "capacity",
    )
    family = enumerate_subsets(g, dual_sc, connected_only=connected_only, cap=cap)
    rows: set[tuple[tuple[int, int], ...]] = set()
    for subset in family:
        row: dict[int, int] = {}
        for v in subset:
            column = demand[vertex_orbit_of[v]]
            row[column] = row.get(column, 0) + 1
        for edge in g.boundary(subset):
            column = capacity[edge_orbit_of[edge]]
            row[column] = row.get(column, 0) - 1
        signature = tuple(sorted(row.items()))
        if signature in rows:
            continue
        rows.add(signature)
        ilp.lp.add_constraint(row, Relation.LE, 0, f"orbit_row_{len(rows)}")
    ilp.lp.set_objective(
        {demand[o]: len(orbit) for o, orbit in enumerate(vertex_orbits)}, Sense.MAX
    )
    ilp.subsets = family.subsets
    logger.debug(
        "Built reduced LP",
        vertex_orbits=len(vertex_orbits),
        edge_orbits=len(edge_orbits),
        subsets=len(family),
        rows=len(rows),
    )
    return ilp


def expand_reduced_solution(
    ilp: IndexedLp, solution: LpSolution, group: AutomorphismSet, g: Graph
) -> tuple[tuple[Fraction, ...], dict[Edge, Fraction]]:
    """Per-vertex ``eta`` and per-edge ``kappa`` of an optimal reduced LP."""
    if ilp.problem_kind is not ProblemKind.REDUCED_SYMMETRIC or not solution.is_optimal:
        raise ValueError("Expected an optimal orbit-reduced LP solution")
    vertex_orbits, edge_orbits = orbits(group, g)
    eta = [ZERO] * g.vertex_count
    for o, orbit in enumerate(vertex_orbits):
        for v in orbit:
            eta[v] = ilp.value(solution, "eta", o)
    kappa = {
        e: ilp.value(solution, "kappa", o)
        for o, orbit in enumerate(edge_orbits)
        for e in orbit
    }
    return tuple(eta), kappa


__all__ = [
    "check_scale_invariant",
    "average_solution",
    "reduced_symmetric_lp",
    "expand_reduced_solution",
]
