"""Closed forms for cubes, high-girth regular graphs and regular trees."""

from __future__ import annotations

from fractions import Fraction

from propa.exact.rational import binomial


def _require_degree(d: int) -> None:
    if d < 3:
        raise ValueError(f"Degree must be at least 3, got {d}")


def _require_scale(s: int) -> None:
    if s < 0:
        raise ValueError(f"Scale radius must be nonnegative, got {s}")


def ball_volume(n: int, m: int) -> int:
    """Number of vertices within distance ``m`` of a point of the ``n``-cube."""
    return sum(binomial(n, k) for k in range(m + 1))


def cube_epsilon_formula(n: int, s: int) -> Fraction:
    """``2 C(n-1, s) / sum_{k<=s} C(n, k)``; zero once ``s >= n``."""
    if n < 1:
        raise ValueError(f"Cube dimension must be positive, got {n}")
    _require_scale(s)
    return Fraction(2 * binomial(n - 1, s), ball_volume(n, s))


def cube_layer_weight(n: int, m: int) -> Fraction:
    """Edges from the ``m``-sphere outward per vertex of the ``m``-ball.

    The weights never increase with ``m``, which is what lets the layered
    cube flow respect uniform capacities.
    """
    return Fraction(binomial(n, m + 1) * (m + 1), ball_volume(n, m))


def girth_epsilon_formula(d: int, s: int) -> Fraction:
    """``2 (d-1)^s (2-d) / (2 - d (d-1)^s)`` for ``d``-regular graphs of girth above ``2s+1``."""
    _require_degree(d)
    _require_scale(s)
    growth = (d - 1) ** s
    return Fraction(2 * growth * (2 - d), 2 - d * growth)


def girth_cheeger_formula(d: int, s: int) -> Fraction:
    """Cheeger constant at scale ``s`` of a ``d``-regular graph of girth above ``2s+1``."""
    _require_degree(d)
    _require_scale(s)
    growth = (d - 1) ** s
    return Fraction((2 - d) * d * growth, 2 - d * growth)


def girth_epsilon_scale_limit(d: int) -> Fraction:
    """Limit of ``girth_epsilon_formula(d, s)`` as ``s`` grows: ``2 - 4/d``."""
    _require_degree(d)
    return 2 - Fraction(4, d)


def tree_isoperimetric_number(d: int, n: int, k: int) -> Fraction:
    """``|dU| / |U|`` for an ``n``-vertex subset of a ``d``-regular tree with ``k`` components."""
    _require_degree(d)
    if n < 1 or not 1 <= k <= n:
        raise ValueError(f"Need n >= 1 and 1 <= k <= n, got n={n}, k={k}")
    return Fraction((d - 2) * n + 2 * k, n)


__all__ = [
    "ball_volume",
    "cube_epsilon_formula",
    "cube_layer_weight",
    "girth_epsilon_formula",
    "girth_cheeger_formula",
    "girth_epsilon_scale_limit",
    "tree_isoperimetric_number",
]
