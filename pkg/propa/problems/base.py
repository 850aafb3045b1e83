"""Indexed linear programs and subset families."""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from propa.config import get_settings
from propa.errors import LpSizeError
from propa.exact.program import LinearProgram, LpSolution, Status
from propa.exact.simplex import PivotRule, solve
from propa.graphs.base import Edge

ZERO = Fraction(0)

VarKey = tuple[str | int, ...]


class ProblemKind(str, Enum):
    """Which linear problem an ``IndexedLp`` encodes."""

    MEASURES = "measures"
    PSEUDO_FLOWS = "pseudo_flows"
    ISOPERIMETRIC = "isoperimetric"
    PARTITION = "partition"
    UNIFORM_FLOWS = "uniform_flows"
    MEAN_PROPERTY_A = "mean_property_a"
    SINGLE_COLUMN = "single_column"
    ISOPERIMETRIC_DUAL = "isoperimetric_dual"
    FIXED_CAPACITY_FLOWS = "fixed_capacity_flows"
    UNIFORM_DEMAND_FLOWS = "uniform_demand_flows"
    REDUCED_SYMMETRIC = "reduced_symmetric"


def variable_name(key: VarKey) -> str:
    """Diagnostic column name, e.g. ``("x", 3, 7)`` becomes ``"x_3_7"``."""
    return "_".join(str(part) for part in key)


@dataclass
class IndexedLp:
    """A linear program plus the semantic meaning of its columns.

    ``var_map`` keys are tuples led by the symbol name: ``("x", i, j)``,
    ``("e", u, v, k)``, ``("e",)``, ``("eta", i)``, ``("kappa", u, v)``,
    ``("phi", k, u, v)``, ``("f", k, i)``, ``("n", i, j)``, ``("c", u, v, k)``,
    ``("z", t)``, ``("a",)``.
    """

    lp: LinearProgram
    var_map: dict[VarKey, int]
    problem_kind: ProblemKind
    convention_optimum: Fraction | None = None
    subsets: tuple[frozenset[int], ...] = ()
    fixed_kappa: dict[Edge, Fraction] | None = None

    def add(
        self,
        key: VarKey,
        lower: Fraction | int | None = 0,
        upper: Fraction | int | None = None,
    ) -> int:
        """Create the column for ``key`` and return its index."""
        if key in self.var_map:
            raise KeyError(f"Variable {key} defined twice")
        column = self.lp.add_variable(variable_name(key), lower, upper)
        self.var_map[key] = column
        return column

    def column(self, *key: str | int) -> int:
        """Column index of a semantic variable."""
        return self.var_map[key]

    def __contains__(self, key: object) -> bool:
        return key in self.var_map

    def check_size(self, ceiling: int | None = None) -> None:
        """Raise ``LpSizeError`` if the LP has more columns than allowed."""
        limit = ceiling if ceiling is not None else get_settings().max_lp_cols
        if self.lp.num_variables > limit:
            raise LpSizeError(self.lp.num_constraints, self.lp.num_variables, limit)

    def solve(self, pivot_rule: PivotRule | None = None) -> LpSolution:
        """Solve, short-circuiting instances whose optimum is fixed by convention."""
        if self.convention_optimum is not None:
            return LpSolution(
                status=Status.OPTIMAL,
                assignment=[ZERO] * self.lp.num_variables,
                objective_value=self.convention_optimum,
                statistics={"convention": True},
            )
        return solve(self.lp, pivot_rule=pivot_rule)

    def value(self, solution: LpSolution, *key: str | int) -> Fraction:
        """Value of a semantic variable; 0 for variables omitted from the LP."""
        column = self.var_map.get(key)
        return ZERO if column is None else solution.assignment[column]

    def items(self, symbol: str) -> Iterator[tuple[VarKey, int]]:
        """``(key, column)`` pairs whose key starts with ``symbol``, in column order."""
        for key, column in self.var_map.items():
            if key[0] == symbol:
                yield key, column


@dataclass(frozen=True)
class SubsetFamily:
    """Deduplicated nonempty subsets, each with the first scale set holding it."""

    subsets: tuple[frozenset[int], ...]
    owners: tuple[int, ...]
    connected: tuple[bool, ...]

    def __len__(self) -> int:
        return len(self.subsets)

    def __iter__(self) -> Iterator[frozenset[int]]:
        return iter(self.subsets)


__all__ = [
    "VarKey",
    "ProblemKind",
    "variable_name",
    "IndexedLp",
    "SubsetFamily",
]
