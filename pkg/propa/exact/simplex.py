"""Two-phase primal simplex on exact rationals.

The tableau is kept row-sparse: each row maps column index to a nonzero
Fraction and always holds its basic column with coefficient 1.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from propa.config import get_logger_instance, get_settings
from propa.exact.program import LinearProgram, LpSolution, Relation, Sense, Status

logger = get_logger_instance("propa.simplex")

ZERO = Fraction(0)
ONE = Fraction(1)

PivotRule = Literal["dantzig", "bland"]


@dataclass
class _StandardForm:
    """``min c.y + offset`` over ``A y (rel) b``, ``y >= 0``, with ``b >= 0``.

    ``columns[j]`` lists ``(sign, y)`` so that ``x_j = shift[j] + sum(sign * y)``.
    """

    rows: list[dict[int, Fraction]] = field(default_factory=list)
    relations: list[Relation] = field(default_factory=list)
    rhs: list[Fraction] = field(default_factory=list)
    cost: dict[int, Fraction] = field(default_factory=dict)
    offset: Fraction = ZERO
    shift: list[Fraction] = field(default_factory=list)
    columns: list[list[tuple[int, int]]] = field(default_factory=list)
    width: int = 0

    @classmethod
    def from_lp(cls, lp: LinearProgram) -> _StandardForm:
        form = cls()
        bound_rows: list[tuple[int, Fraction]] = []
        for j in range(lp.num_variables):
            low, high = lp.lower[j], lp.upper[j]
            if low is not None:
                y = form._new_column()
                form.shift.append(low)
                form.columns.append([(1, y)])
                if high is not None:
                    bound_rows.append((y, high - low))
            elif high is not None:
                form.shift.append(high)
                form.columns.append([(-1, form._new_column())])
            else:
                form.shift.append(ZERO)
                form.columns.append([(1, form._new_column()), (-1, form._new_column())])

        for row in lp.constraints:
            coefficients: dict[int, Fraction] = {}
            rhs = row.rhs
            for j, a in row.coefficients.items():
                rhs -= a * form.shift[j]
                for sign, y in form.columns[j]:
                    coefficients[y] = coefficients.get(y, ZERO) + sign * a
            form._add_row(coefficients, row.relation, rhs)
        for y, span in bound_rows:
            form._add_row({y: ONE}, Relation.LE, span)

        sign = -1 if lp.sense is Sense.MAX else 1
        for j, c in lp.objective.items():
            form.offset += sign * c * form.shift[j]
            for column_sign, y in form.columns[j]:
                form.cost[y] = form.cost.get(y, ZERO) + sign * column_sign * c
        form.cost = {y: c for y, c in form.cost.items() if c}
        return form

    def _new_column(self) -> int:
        self.width += 1
        return self.width - 1

    def _add_row(
        self, coefficients: dict[int, Fraction], relation: Relation, rhs: Fraction
    ) -> None:
        coefficients = {y: a for y, a in coefficients.items() if a}
        if rhs < 0:
            coefficients = {y: -a for y, a in coefficients.items()}
            rhs = -rhs
            if relation is Relation.LE:
                relation = Relation.GE
            elif relation is Relation.GE:
                relation = Relation.LE
        self.rows.append(coefficients)
        self.relations.append(relation)
        self.rhs.append(rhs)


class _Tableau:
    """Canonical-form tableau with a reduced-cost row."""

    def __init__(
        self,
        rows: list[dict[int, Fraction]],
        rhs: list[Fraction],
        basis: list[int],
        pivot_rule: PivotRule,
        degenerate_streak: int,
    ) -> None:
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivot_rule = pivot_rule
        self.degenerate_streak = degenerate_streak
        self.reduced: dict[int, Fraction] = {}
        self.value = ZERO
        self.pivots = 0

    def price(self, cost: dict[int, Fraction], offset: Fraction) -> None:
        """Reset the reduced-cost row for ``cost`` under the current basis."""
        reduced = dict(cost)
        value = offset
        for row, b, rhs in zip(self.rows, self.basis, self.rhs, strict=True):
            cb = cost.get(b)
            if not cb:
                continue
            value += cb * rhs
            for k, a in row.items():
                updated = reduced.get(k, ZERO) - cb * a
                if updated:
                    reduced[k] = updated
                else:
                    reduced.pop(k, None)
        self.reduced = reduced
        self.value = value

    def pivot(self, r: int, j: int) -> None:
        pivot_row = self.rows[r]
        element = pivot_row[j]
        if element != ONE:
            inverse = ONE / element
            pivot_row = {k: a * inverse for k, a in pivot_row.items()}
            self.rows[r] = pivot_row
            self.rhs[r] *= inverse
        pivot_rhs = self.rhs[r]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            factor = row.get(j)
            if factor is None:
                continue
            for k, a in pivot_row.items():
                updated = row.get(k, ZERO) - factor * a
                if updated:
                    row[k] = updated
                else:
                    del row[k]
            if pivot_rhs:
                self.rhs[i] -= factor * pivot_rhs
        factor = self.reduced.get(j)
        if factor is not None:
            for k, a in pivot_row.items():
                updated = self.reduced.get(k, ZERO) - factor * a
                if updated:
                    self.reduced[k] = updated
                else:
                    del self.reduced[k]
            self.value += factor * pivot_rhs
        self.basis[r] = j
        self.pivots += 1

    def _entering(self, excluded: set[int], bland: bool) -> int | None:
        candidates = (
            (d, k) for k, d in self.reduced.items() if d < 0 and k not in excluded
        )
        if bland:
            return min((k for _, k in candidates), default=None)
        best = min(candidates, default=None)
        return None if best is None else best[1]

    def _leaving(self, j: int) -> int | None:
        best: tuple[Fraction, int, int] | None = None
        for i, row in enumerate(self.rows):
            a = row.get(j)
            if a is None or a <= 0:
                continue
            key = (self.rhs[i] / a, self.basis[i], i)
            if best is None or key < best:
                best = key
        return None if best is None else best[2]

    def run(self, excluded: set[int]) -> Status:
        """Pivot to optimality; columns in ``excluded`` never enter."""
        streak = 0
        while True:
            bland = self.pivot_rule == "bland" or streak >= self.degenerate_streak
            j = self._entering(excluded, bland)
            if j is None:
                return Status.OPTIMAL
            r = self._leaving(j)
            if r is None:
                return Status.UNBOUNDED
            streak = streak + 1 if not self.rhs[r] else 0
            self.pivot(r, j)


def solve(
    lp: LinearProgram,
    pivot_rule: PivotRule | None = None,
    degenerate_streak: int | None = None,
) -> LpSolution:
    """Solve ``lp`` exactly.

    Args:
        lp: Program to solve
        pivot_rule: ``"dantzig"`` (largest improvement, lowest index on ties,
            switching to Bland's rule during long degenerate runs) or
            ``"bland"``; defaults to the configured rule
        degenerate_streak: Degenerate pivots tolerated before Bland's rule

    Returns:
        LpSolution whose assignment satisfies every row and bound when optimal
    """
    settings = get_settings()
    rule: PivotRule = pivot_rule or settings.pivot_rule
    streak = degenerate_streak or settings.degenerate_streak
    started = time.perf_counter()

    form = _StandardForm.from_lp(lp)
    width = form.width
    rows: list[dict[int, Fraction]] = []
    basis: list[int] = []
    artificial: set[int] = set()
    for coefficients, relation in zip(form.rows, form.relations, strict=True):
        row = dict(coefficients)
        if relation is Relation.GE:
            row[width] = -ONE
            width += 1
        column = width
        width += 1
        row[column] = ONE
        if relation is not Relation.LE:
            artificial.add(column)
        rows.append(row)
        basis.append(column)

    tableau = _Tableau(rows, list(form.rhs), basis, rule, streak)
    phase_one_pivots = 0
    if artificial:
        tableau.price({column: ONE for column in artificial}, ZERO)
        tableau.run(excluded=set())
        phase_one_pivots = tableau.pivots
        if tableau.value > 0:
            return _finish(lp, Status.INFEASIBLE, [], started, phase_one_pivots, 0, form)
        _drive_out_artificials(tableau, artificial)

    tableau.price(form.cost, form.offset)
    status = tableau.run(excluded=artificial)
    phase_two_pivots = tableau.pivots - phase_one_pivots
    if status is not Status.OPTIMAL:
        return _finish(lp, status, [], started, phase_one_pivots, phase_two_pivots, form)

    y = [ZERO] * width
    for b, value in zip(tableau.basis, tableau.rhs, strict=True):
        y[b] = value
    assignment = [
        shift + sum((sign * y[column] for sign, column in columns), start=ZERO)
        for shift, columns in zip(form.shift, form.columns, strict=True)
    ]
    return _finish(
        lp, Status.OPTIMAL, assignment, started, phase_one_pivots, phase_two_pivots, form
    )


def _drive_out_artificials(tableau: _Tableau, artificial: set[int]) -> None:
    """Pivot zero-level artificials out of the basis and drop redundant rows."""
    r = 0
    while r < len(tableau.rows):
        if tableau.basis[r] in artificial:
            row = tableau.rows[r]
            replacement = min(
                (k for k in row if k not in artificial), default=None
            )
            if replacement is None:
                del tableau.rows[r]
                del tableau.rhs[r]
                del tableau.basis[r]
                continue
            tableau.pivot(r, replacement)
        r += 1
    for row in tableau.rows:
        for column in artificial.intersection(row):
            del row[column]


def _finish(
    lp: LinearProgram,
    status: Status,
    assignment: list[Fraction],
    started: float,
    phase_one: int,
    phase_two: int,
    form: _StandardForm,
) -> LpSolution:
    statistics = {
        "phase1_pivots": phase_one,
        "phase2_pivots": phase_two,
        "rows": len(form.rows),
        "columns": form.width,
        "seconds": round(time.perf_counter() - started, 6),
    }
    objective = lp.evaluate(assignment) if status is Status.OPTIMAL else None
    logger.debug(
        "Simplex finished",
        status=status.value,
        variables=lp.num_variables,
        constraints=lp.num_constraints,
        **statistics,
    )
    return LpSolution(
        status=status,
        assignment=assignment,
        objective_value=objective,
        statistics=statistics,
    )


__all__ = ["PivotRule", "solve"]
