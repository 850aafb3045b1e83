"""Transposition between measure families and partitions, and level-set flattening."""

from __future__ import annotations

from fractions import Fraction

from propa.flows.certificates import MeasureFamily, PartitionFamily

ZERO = Fraction(0)


def _is_flat(functions: tuple[tuple[int, dict[int, Fraction]], ...]) -> bool:
    return all(len({v for v in f.values() if v}) <= 1 for _, f in functions)


def partition_from_measures(mf: MeasureFamily) -> PartitionFamily:
    """Transpose ``xi_i(j)`` into functions ``phi_j(i)`` tagged with ``j``.

    The functions are subordinated to the dual of the measures' scale.
    """
    columns: dict[int, dict[int, Fraction]] = {}
    for i, measure in enumerate(mf.xi):
        for j, mass in measure.items():
            if mass:
                columns.setdefault(j, {})[i] = mass
    functions = tuple((j, columns[j]) for j in sorted(columns))
    return PartitionFamily(
        functions=functions, flat=_is_flat(functions), variation=mf.epsilon
    )


def measures_from_partition(
    pf: PartitionFamily, vertex_count: int | None = None
) -> MeasureFamily:
    """Inverse transpose; functions sharing a tag are summed first.

    Args:
        pf: Partition of unity
        vertex_count: Number of vertices; inferred from tags and supports if omitted
    """
    if vertex_count is None:
        labels = [tag for tag, _ in pf.functions]
        labels.extend(v for _, f in pf.functions for v in f)
        vertex_count = max(labels, default=-1) + 1
    xi: list[dict[int, Fraction]] = [{} for _ in range(vertex_count)]
    for tag, function in pf.functions:
        for i, value in function.items():
            if value:
                xi[i][tag] = xi[i].get(tag, ZERO) + value
    return MeasureFamily(xi=tuple(xi), epsilon=pf.variation)


def flatten_partition(pf: PartitionFamily) -> PartitionFamily:
    """Slice every function along its distinct values into flat pieces.

    A function with values ``0 < y_1 < ... < y_m`` becomes ``m`` slices; slice
    ``r`` equals ``y_r - y_(r-1)`` wherever the function reaches ``y_r``. The
    summed variation on every edge is unchanged.

    Raises:
        ValueError: If a function takes negative values
    """
    pieces: list[tuple[int, dict[int, Fraction]]] = []
    for position, (tag, function) in enumerate(pf.functions):
        if any(value < 0 for value in function.values()):
            raise ValueError(f"Function {position} takes negative values")
        levels = sorted({value for value in function.values() if value})
        previous = ZERO
        for level in levels:
            height = level - previous
            pieces.append(
                (tag, {v: height for v, value in function.items() if value >= level})
            )
            previous = level
    return PartitionFamily(functions=tuple(pieces), flat=True, variation=pf.variation)


__all__ = [
    "partition_from_measures",
    "measures_from_partition",
    "flatten_partition",
]
