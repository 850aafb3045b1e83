"""Sparse exact linear programs and their solutions."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any

from propa.exact.rational import format_rational

ZERO = Fraction(0)


class Sense(str, Enum):
    """Objective direction."""

    MIN = "min"
    MAX = "max"


class Relation(str, Enum):
    """Row relation."""

    LE = "<="
    EQ = "="
    GE = ">="


class Status(str, Enum):
    """Outcome of a solve."""

    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True, slots=True)
class Constraint:
    """One sparse row ``sum(coefficients[j] * x_j) relation rhs``."""

    coefficients: dict[int, Fraction]
    relation: Relation
    rhs: Fraction
    name: str = ""

    def activity(self, assignment: Sequence[Fraction]) -> Fraction:
        """Left-hand side at ``assignment``."""
        return sum(
            (c * assignment[j] for j, c in self.coefficients.items()), start=ZERO
        )

    def holds(self, assignment: Sequence[Fraction]) -> bool:
        """Whether the row is satisfied exactly."""
        lhs = self.activity(assignment)
        if self.relation is Relation.LE:
            return lhs <= self.rhs
        if self.relation is Relation.GE:
            return lhs >= self.rhs
        return lhs == self.rhs


@dataclass
class LinearProgram:
    """Exact LP assembled column by column and row by row.

    Builders populate it once; afterwards it is only read.
    """

    sense: Sense = Sense.MIN
    objective: dict[int, Fraction] = field(default_factory=dict)
    constraints: list[Constraint] = field(default_factory=list)
    lower: list[Fraction | None] = field(default_factory=list)
    upper: list[Fraction | None] = field(default_factory=list)
    names: list[str] = field(default_factory=list)

    @property
    def num_variables(self) -> int:
        return len(self.names)

    @property
    def num_constraints(self) -> int:
        return len(self.constraints)

    def add_variable(
        self,
        name: str,
        lower: Fraction | int | None = 0,
        upper: Fraction | int | None = None,
    ) -> int:
        """Append a column and return its index; ``None`` bounds are infinite."""
        self.names.append(name)
        self.lower.append(None if lower is None else Fraction(lower))
        self.upper.append(None if upper is None else Fraction(upper))
        return len(self.names) - 1

    def add_constraint(
        self,
        coefficients: Mapping[int, Fraction | int],
        relation: Relation,
        rhs: Fraction | int = 0,
        name: str = "",
    ) -> None:
        """Append a row, dropping zero coefficients and merging repeats."""
        row: dict[int, Fraction] = {}
        for column, value in coefficients.items():
            if not 0 <= column < self.num_variables:
                raise IndexError(f"Row {name!r} references unknown column {column}")
            row[column] = row.get(column, ZERO) + Fraction(value)
        row = {column: value for column, value in row.items() if value}
        self.constraints.append(Constraint(row, relation, Fraction(rhs), name))

    def set_objective(
        self, coefficients: Mapping[int, Fraction | int], sense: Sense
    ) -> None:
        """Replace the objective."""
        self.sense = sense
        self.objective = {j: Fraction(c) for j, c in coefficients.items() if c}

    def evaluate(self, assignment: Sequence[Fraction]) -> Fraction:
        """Objective value at ``assignment``."""
        return sum(
            (c * assignment[j] for j, c in self.objective.items()), start=ZERO
        )


@dataclass
class LpSolution:
    """Result of ``solve``; ``assignment`` is empty unless optimal."""

    status: Status
    assignment: list[Fraction] = field(default_factory=list)
    objective_value: Fraction | None = None
    statistics: dict[str, Any] = field(default_factory=dict)

    @property
    def is_optimal(self) -> bool:
        return self.status is Status.OPTIMAL

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "status": self.status.value,
            "objective": (
                None
                if self.objective_value is None
                else format_rational(self.objective_value)
            ),
            "assignment": [format_rational(v) for v in self.assignment],
            "statistics": self.statistics,
        }


def violations(lp: LinearProgram, assignment: Sequence[Fraction]) -> list[str]:
    """Describe every bound and row that ``assignment`` violates.

    Raises:
        ValueError: If the assignment length differs from the column count
    """
    if len(assignment) != lp.num_variables:
        raise ValueError(
            f"Assignment has {len(assignment)} values for {lp.num_variables} variables"
        )
    found: list[str] = []
    for j, value in enumerate(assignment):
        low, high = lp.lower[j], lp.upper[j]
        if low is not None and value < low:
            found.append(f"{lp.names[j]} = {value} below lower bound {low}")
        if high is not None and value > high:
            found.append(f"{lp.names[j]} = {value} above upper bound {high}")
    for index, row in enumerate(lp.constraints):
        if not row.holds(assignment):
            label = row.name or f"row {index}"
            found.append(
                f"{label}: {row.activity(assignment)} {row.relation.value} {row.rhs} fails"
            )
    return found


def check_feasible(lp: LinearProgram, assignment: Sequence[Fraction]) -> bool:
    """Whether ``assignment`` meets every bound and row exactly."""
    return not violations(lp, assignment)


def _term(coefficient: Fraction, name: str, first: bool) -> str:
    sign = "-" if coefficient < 0 else ("" if first else "+")
    magnitude = abs(coefficient)
    text = name if magnitude == 1 else f"{format_rational(magnitude)} {name}"
    return f"{sign} {text}".strip() if first else f"{sign} {text}"


def _expression(coefficients: Mapping[int, Fraction], names: Sequence[str]) -> str:
    if not coefficients:
        return "0"
    return " ".join(
        _term(coefficients[j], names[j], position == 0)
        for position, j in enumerate(sorted(coefficients))
    )


def write_lp_text(lp: LinearProgram) -> str:
    """Render ``lp`` in CPLEX LP layout with exact ``p/q`` coefficients."""
    lines = ["Maximize" if lp.sense is Sense.MAX else "Minimize"]
    lines.append(f" obj: {_expression(lp.objective, lp.names)}")
    lines.append("Subject To")
    for index, row in enumerate(lp.constraints):
        label = row.name or f"r{index}"
        relation = "=" if row.relation is Relation.EQ else row.relation.value
        lines.append(
            f" {label}: {_expression(row.coefficients, lp.names)} "
            f"{relation} {format_rational(row.rhs)}"
        )
    lines.append("Bounds")
    for j, name in enumerate(lp.names):
        low, high = lp.lower[j], lp.upper[j]
        if low is None:
            lines.append(
                f" {name} free"
                if high is None
                else f" -inf <= {name} <= {format_rational(high)}"
            )
        elif high is None:
            if low != 0:
                lines.append(f" {name} >= {format_rational(low)}")
        else:
            lines.append(
                f" {format_rational(low)} <= {name} <= {format_rational(high)}"
            )
    lines.append("End")
    return "\n".join(lines) + "\n"


__all__ = [
    "Sense",
    "Relation",
    "Status",
    "Constraint",
    "LinearProgram",
    "LpSolution",
    "violations",
    "check_feasible",
    "write_lp_text",
]
