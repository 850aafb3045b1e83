"""Exact rational linear programming."""

from __future__ import annotations

from propa.exact.program import (
    Constraint,
    LinearProgram,
    LpSolution,
    Relation,
    Sense,
    Status,
    check_feasible,
    violations,
    write_lp_text,
)
from propa.exact.rational import Rational, binomial, format_rational, parse_rational
from propa.exact.simplex import PivotRule, solve

__all__ = [
    "Constraint",
    "LinearProgram",
    "LpSolution",
    "Relation",
    "Sense",
    "Status",
    "check_feasible",
    "violations",
    "write_lp_text",
    "Rational",
    "binomial",
    "format_rational",
    "parse_rational",
    "PivotRule",
    "solve",
]
