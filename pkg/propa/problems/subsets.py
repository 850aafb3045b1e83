"""Enumeration of the subsets T used by isoperimetric constraints."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from itertools import combinations

from propa.config import get_logger_instance, get_settings
from propa.errors import EnumerationCapError
from propa.graphs.base import Graph, Scale
from propa.problems.base import SubsetFamily

logger = get_logger_instance("propa.subsets")


def is_connected_subset(g: Graph, subset: Iterable[int]) -> bool:
    """Whether ``subset`` induces a connected subgraph (empty sets are not)."""
    members = set(subset)
    if not members:
        return False
    start = min(members)
    seen = {start}
    frontier = deque([start])
    while frontier:
        vertex = frontier.popleft()
        for neighbour in g.adjacency[vertex]:
            if neighbour in members and neighbour not in seen:
                seen.add(neighbour)
                frontier.append(neighbour)
    return len(seen) == len(members)


def connected_subsets(g: Graph, vertices: Iterable[int]) -> Iterator[frozenset[int]]:
    """Every connected induced subset of ``vertices``, each exactly once.

    Grows sets from their least vertex, only ever adding exclusive neighbours
    of the current set, so no subset is produced twice.
    """
    allowed = set(vertices)
    adjacency = {v: [u for u in g.adjacency[v] if u in allowed] for v in allowed}

    def extend(
        current: frozenset[int], extension: list[int], closed: set[int], root: int
    ) -> Iterator[frozenset[int]]:
        yield current
        pending = sorted(extension)
        while pending:
            w = pending.pop(0)
            fresh = [u for u in adjacency[w] if u > root and u not in closed]
            yield from extend(
                current | {w},
                pending + fresh,
                closed | set(adjacency[w]),
                root,
            )

    for root in sorted(allowed):
        start = [u for u in adjacency[root] if u > root]
        yield from extend(
            frozenset([root]), start, {root, *adjacency[root]}, root
        )


def all_subsets(vertices: Iterable[int]) -> Iterator[frozenset[int]]:
    """Every nonempty subset of ``vertices``, smallest first."""
    members = sorted(set(vertices))
    for size in range(1, len(members) + 1):
        for chosen in combinations(members, size):
            yield frozenset(chosen)


def enumerate_family_subsets(
    g: Graph,
    sets: Sequence[frozenset[int]],
    connected_only: bool = True,
    cap: int | None = None,
) -> SubsetFamily:
    """Subsets of each set in ``sets``, deduplicated across sets.

    Raises:
        EnumerationCapError: If some set is larger than ``cap``
    """
    limit = cap if cap is not None else get_settings().enumeration_cap
    owners: dict[frozenset[int], int] = {}
    for index, members in enumerate(sets):
        if len(members) > limit:
            raise EnumerationCapError(index, len(members), limit)
        produced = (
            connected_subsets(g, members) if connected_only else all_subsets(members)
        )
        for subset in produced:
            owners.setdefault(subset, index)
    subsets = tuple(owners)
    family = SubsetFamily(
        subsets=subsets,
        owners=tuple(owners[s] for s in subsets),
        connected=tuple(
            True if connected_only else is_connected_subset(g, s) for s in subsets
        ),
    )
    logger.debug(
        "Enumerated subsets",
        sets=len(sets),
        subsets=len(family),
        connected_only=connected_only,
    )
    return family


def enumerate_subsets(
    g: Graph,
    dual_sc: Scale,
    connected_only: bool = True,
    cap: int | None = None,
) -> SubsetFamily:
    """Nonempty (connected) subsets of the dual-scale sets, deduplicated.

    Raises:
        EnumerationCapError: If a dual-scale set exceeds the enumeration cap
    """
    dual_sc.check(g)
    return enumerate_family_subsets(g, dual_sc.sets, connected_only, cap)


__all__ = [
    "is_connected_subset",
    "connected_subsets",
    "all_subsets",
    "enumerate_family_subsets",
    "enumerate_subsets",
]
