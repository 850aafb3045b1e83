"""Exception hierarchy for propa."""

from __future__ import annotations

from collections.abc import Iterable


class PropaError(Exception):
    """Base class for every error raised by propa."""


class InvalidGraphError(PropaError, ValueError):
    """Graph data violates the canonical form or cannot be parsed."""


class InvalidScaleError(PropaError, ValueError):
    """A scale does not fit its graph or misses i in S_i."""


class InvalidEmbeddingError(PropaError, ValueError):
    """A vertex map is not an injective, edge-preserving, convex embedding."""


class EnumerationCapError(PropaError):
    """A dual-scale set is too large for subset enumeration."""

    def __init__(self, set_index: int | None, size: int, cap: int) -> None:
        self.set_index = set_index
        self.size = size
        self.cap = cap
        if set_index is None:
            message = (
                f"Subset family has {size} members, above the cap {cap}; "
                "allow exponential enumeration to proceed"
            )
        else:
            message = (
                f"Dual-scale set {set_index} has {size} vertices, above the "
                f"enumeration cap {cap}; use the pseudo-flows formulation instead"
            )
        super().__init__(message)


class LpSizeError(PropaError):
    """An LP exceeds the configured column ceiling."""

    def __init__(self, rows: int, cols: int, ceiling: int) -> None:
        self.rows = rows
        self.cols = cols
        self.ceiling = ceiling
        super().__init__(
            f"LP needs {cols} columns and {rows} rows; ceiling is {ceiling} "
            "columns (raise PROPA_MAX_LP_COLS to override)"
        )


class InfeasibleDemandError(PropaError):
    """A demand vector violates a weighted isoperimetric inequality."""

    def __init__(self, focus: int, witness: Iterable[int]) -> None:
        self.focus = focus
        self.witness = tuple(sorted(witness))
        super().__init__(
            f"Demand around vertex {focus} cannot be met; "
            f"violated set {list(self.witness)}"
        )


class CertificateMismatchError(PropaError):
    """Primal and dual results disagree or belong to different instances."""


class NotAutomorphismError(PropaError, ValueError):
    """A supplied permutation does not preserve the edge set."""


class GroupTooLargeError(PropaError):
    """Group closure exceeded its element cap."""


class ScaleNotInvariantError(PropaError, ValueError):
    """A scale is not mapped onto itself by a group element."""


__all__ = [
    "PropaError",
    "InvalidGraphError",
    "InvalidScaleError",
    "InvalidEmbeddingError",
    "EnumerationCapError",
    "LpSizeError",
    "InfeasibleDemandError",
    "CertificateMismatchError",
    "NotAutomorphismError",
    "GroupTooLargeError",
    "ScaleNotInvariantError",
]
