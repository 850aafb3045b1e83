"""Read certificates out of solved indexed LPs."""

from __future__ import annotations

from fractions import Fraction

from propa.exact.program import LpSolution
from propa.flows.certificates import FlowCertificate, MeasureFamily, PartitionFamily
from propa.graphs.base import Edge, Graph, Scale
from propa.problems.base import IndexedLp, ProblemKind
from propa.problems.isoperimetric import flat_partition_from_z


def _require(ilp: IndexedLp, solution: LpSolution, *kinds: ProblemKind) -> None:
    if ilp.problem_kind not in kinds:
        raise ValueError(
            f"Cannot read this certificate from a {ilp.problem_kind.value} LP"
        )
    if not solution.is_optimal:
        raise ValueError(f"LP status is {solution.status.value}, not optimal")


def measure_family_from_solution(
    ilp: IndexedLp, solution: LpSolution, vertex_count: int
) -> MeasureFamily:
    """Measure family from an optimal measures LP; zero masses are dropped."""
    _require(ilp, solution, ProblemKind.MEASURES)
    xi: list[dict[int, Fraction]] = [{} for _ in range(vertex_count)]
    for (_, i, j), column in ilp.items("x"):
        mass = solution.assignment[column]
        if mass:
            xi[int(i)][int(j)] = mass
    return MeasureFamily(xi=tuple(xi), epsilon=ilp.value(solution, "e"))


def partition_family_from_solution(
    ilp: IndexedLp, solution: LpSolution
) -> PartitionFamily:
    """Partition of unity from an optimal partition LP, one function per tag."""
    _require(ilp, solution, ProblemKind.PARTITION)
    functions: dict[int, dict[int, Fraction]] = {}
    for (_, k, i), column in ilp.items("f"):
        value = solution.assignment[column]
        if value:
            functions.setdefault(int(k), {})[int(i)] = value
    return PartitionFamily(
        functions=tuple(sorted(functions.items())),
        flat=False,
        variation=ilp.value(solution, "e"),
    )


def flat_partition_from_solution(
    ilp: IndexedLp, solution: LpSolution, g: Graph, dual_sc: Scale
) -> PartitionFamily:
    """Flat partition read from the weights of an optimal covering dual LP."""
    _require(ilp, solution, ProblemKind.ISOPERIMETRIC_DUAL)
    z = {
        ilp.subsets[int(t)]: solution.assignment[column]
        for (_, t), column in ilp.items("z")
    }
    return flat_partition_from_z(g, dual_sc, z, ilp.value(solution, "a"))


def demands_and_capacities(
    ilp: IndexedLp, solution: LpSolution, vertex_count: int
) -> tuple[tuple[Fraction, ...], dict[Edge, Fraction]]:
    """``(eta, kappa)`` of an optimal flow or isoperimetric LP.

    A single shared demand column is broadcast to every vertex and
    fixed capacities are copied from the LP.
    """
    _require(
        ilp,
        solution,
        ProblemKind.PSEUDO_FLOWS,
        ProblemKind.ISOPERIMETRIC,
        ProblemKind.FIXED_CAPACITY_FLOWS,
        ProblemKind.UNIFORM_DEMAND_FLOWS,
        ProblemKind.UNIFORM_FLOWS,
    )
    if ("eta",) in ilp:
        shared = ilp.value(solution, "eta")
        eta = (shared,) * vertex_count
    else:
        eta = tuple(ilp.value(solution, "eta", i) for i in range(vertex_count))
    kappa: dict[Edge, Fraction] = {}
    for (_, u, v), column in ilp.items("kappa"):
        if solution.assignment[column]:
            kappa[(int(u), int(v))] = solution.assignment[column]
    if ilp.fixed_kappa is not None:
        kappa = dict(ilp.fixed_kappa)
    return eta, kappa


def flow_certificate_from_solution(
    ilp: IndexedLp, solution: LpSolution, vertex_count: int
) -> FlowCertificate:
    """Pseudo-flow certificate from an optimal flow LP; zero flows are dropped."""
    eta, kappa = demands_and_capacities(ilp, solution, vertex_count)
    flows: dict[int, dict[Edge, Fraction]] = {}
    for (_, k, u, v), column in ilp.items("phi"):
        amount = solution.assignment[column]
        flows.setdefault(int(k), {})
        if amount:
            flows[int(k)][(int(u), int(v))] = amount
    return FlowCertificate(eta=eta, kappa=kappa, flows=flows)


__all__ = [
    "measure_family_from_solution",
    "partition_family_from_solution",
    "flat_partition_from_solution",
    "demands_and_capacities",
    "flow_certificate_from_solution",
]
