"""Automorphism groups given by generators: validation, closure and orbits."""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import Any

import networkx as nx

from propa.config import get_logger_instance, get_settings
from propa.errors import GroupTooLargeError, NotAutomorphismError
from propa.flows.certificates import edge_key
from propa.graphs.base import Edge, Graph, canonical_edge

logger = get_logger_instance("propa.symmetry")

Permutation = tuple[int, ...]


def identity(n: int) -> Permutation:
    return tuple(range(n))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p`` after ``q``: ``v -> p[q[v]]``."""
    return tuple(p[v] for v in q)


def inverse(p: Permutation) -> Permutation:
    result = [0] * len(p)
    for v, image in enumerate(p):
        result[image] = v
    return tuple(result)


def image_edge(p: Permutation, edge: Edge) -> Edge:
    """Image of an edge, reoriented canonically."""
    return canonical_edge(p[edge[0]], p[edge[1]])


def check_automorphism(g: Graph, permutation: Sequence[int]) -> Permutation:
    """Validate ``permutation`` as an automorphism of ``g`` and return it as a tuple.

    Raises:
        NotAutomorphismError: If it is not a bijection of the vertices or moves
            some edge onto a non-edge
    """
    perm = tuple(int(v) for v in permutation)
    if sorted(perm) != list(range(g.vertex_count)):
        raise NotAutomorphismError(
            f"{list(perm)} is not a permutation of {g.vertex_count} vertices"
        )
    for edge in g.edges:
        if image_edge(perm, edge) not in g.edge_index:
            raise NotAutomorphismError(
                f"{list(perm)} maps edge {edge_key(edge)} to a non-edge"
            )
    return perm


def permutation_from_json(data: Any, g: Graph) -> Permutation:
    """Parse a one-line JSON array as an automorphism of ``g``."""
    if not isinstance(data, list) or not all(isinstance(v, int) for v in data):
        raise NotAutomorphismError(
            f"Permutation must be an array of integers: {data!r}"
        )
    return check_automorphism(g, data)


@dataclass(frozen=True)
class AutomorphismSet:
    """Generators of a group acting on a graph, with the closure once computed."""

    permutations: tuple[Permutation, ...]
    closure: tuple[Permutation, ...] | None = None

    @property
    def is_closed(self) -> bool:
        return self.closure is not None

    @property
    def size(self) -> int | None:
        """Group order, or ``None`` before closure."""
        return None if self.closure is None else len(self.closure)

    @classmethod
    def from_generators(
        cls, g: Graph, generators: Iterable[Sequence[int]]
    ) -> AutomorphismSet:
        """Validated generator set; an empty one stands for the trivial group."""
        perms = tuple(check_automorphism(g, p) for p in generators)
        return cls(permutations=perms or (identity(g.vertex_count),))

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary."""
        return {
            "generators": [list(p) for p in self.permutations],
            "size": self.size,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], g: Graph) -> AutomorphismSet:
        return cls.from_generators(
            g, [permutation_from_json(p, g) for p in data.get("generators", [])]
        )


def close_group(
    gens: AutomorphismSet, g: Graph, cap: int | None = None
) -> AutomorphismSet:
    """All products of the generators, found breadth-first from the identity.

    Raises:
        NotAutomorphismError: If a generator is not an automorphism of ``g``
        GroupTooLargeError: If the group has more than ``cap`` elements
    """
    limit = cap if cap is not None else get_settings().group_cap
    generators = [check_automorphism(g, p) for p in gens.permutations]
    start = identity(g.vertex_count)
    seen = {start}
    elements = [start]
    frontier = deque([start])
    while frontier:
        element = frontier.popleft()
        for generator in generators:
            product = compose(generator, element)
            if product in seen:
                continue
            if len(seen) >= limit:
                raise GroupTooLargeError(
                    f"Group closure exceeded {limit} elements"
                )
            seen.add(product)
            elements.append(product)
            frontier.append(product)
    logger.debug("Closed group", generators=len(generators), size=len(elements))
    return AutomorphismSet(permutations=tuple(generators), closure=tuple(elements))


def orbits(
    group: AutomorphismSet, g: Graph
) -> tuple[list[list[int]], list[list[Edge]]]:
    """Vertex orbits and unordered edge orbits, each sorted.

    Orbits of a group are the connected components of the graph joining every
    point to its generator images, so the closure is not needed.
    """
    vertex_links = nx.Graph()
    vertex_links.add_nodes_from(range(g.vertex_count))
    edge_links = nx.Graph()
    edge_links.add_nodes_from(g.edges)
    for perm in group.permutations:
        vertex_links.add_edges_from((v, perm[v]) for v in range(g.vertex_count))
        edge_links.add_edges_from((e, image_edge(perm, e)) for e in g.edges)
    vertex_orbits = sorted(sorted(c) for c in nx.connected_components(vertex_links))
    edge_orbits = sorted(sorted(c) for c in nx.connected_components(edge_links))
    return vertex_orbits, edge_orbits


def orbit_report(group: AutomorphismSet, g: Graph) -> dict[str, Any]:
    """JSON report: generators, group order and both orbit partitions."""
    vertex_orbits, edge_orbits = orbits(group, g)
    report = group.to_dict()
    report["vertex_orbits"] = vertex_orbits
    report["edge_orbits"] = [[edge_key(e) for e in orbit] for orbit in edge_orbits]
    return report


__all__ = [
    "Permutation",
    "identity",
    "compose",
    "inverse",
    "image_edge",
    "check_automorphism",
    "permutation_from_json",
    "AutomorphismSet",
    "close_group",
    "orbits",
    "orbit_report",
]
