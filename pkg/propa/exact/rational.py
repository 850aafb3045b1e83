"""Exact rational helpers on top of ``fractions.Fraction``."""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb

Rational = Fraction

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; integers and Fractions pass through.

    Decimal and exponent forms are rejected so that every value stays exact.

    Raises:
        ValueError: On malformed text
        ZeroDivisionError: On a zero denominator
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"Cannot parse {text!r} as a rational")
    match = _RATIONAL.match(text)
    if match is None:
        raise ValueError(f"Cannot parse {text!r} as a rational 'p/q'")
    numerator, denominator = match.groups()
    return Fraction(int(numerator), int(denominator) if denominator else 1)


def format_rational(value: Fraction | int) -> str:
    """Lowest-terms text: ``"p/q"``, or ``"p"`` for integers."""
    return str(Fraction(value))


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, 0 whenever ``k < 0`` or ``k > n``."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


__all__ = ["Rational", "parse_rational", "format_rational", "binomial"]
