"""Core graph, scale and distance types."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from propa.errors import InvalidGraphError, InvalidScaleError

Edge = tuple[int, int]


def canonical_edge(u: int, v: int) -> Edge:
    """Return the edge {u, v} oriented from the smaller to the larger label."""
    return (u, v) if u < v else (v, u)


class Graph(BaseModel):
    """Finite undirected simple graph with canonically oriented edges.

    Edge ``(u, v)`` always has ``u < v`` and is read as the directed edge
    ``u -> v`` wherever an orientation is needed.
    """

    model_config = ConfigDict(frozen=True)

    vertex_count: int = Field(..., ge=0, description="Number of vertices")
    edges: tuple[Edge, ...] = Field(
        default=(), description="Sorted canonical edge list"
    )
    name: str | None = Field(default=None, description="Optional label")

    @model_validator(mode="after")
    def _check_canonical(self) -> Graph:
        previous: Edge | None = None
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"Self-loop at vertex {u}")
            if not 0 <= u < v:
                raise ValueError(f"Edge ({u}, {v}) is not canonically oriented")
            if v >= self.vertex_count:
                raise ValueError(
                    f"Edge ({u}, {v}) leaves the vertex range 0..{self.vertex_count - 1}"
                )
            if previous is not None and (u, v) <= previous:
                raise ValueError(
                    f"Edges not sorted or duplicated at ({u}, {v})"
                )
            previous = (u, v)
        return self

    @classmethod
    def from_edges(
        cls,
        vertex_count: int,
        edges: Iterable[Sequence[int]],
        name: str | None = None,
    ) -> Graph:
        """Build a graph from edges in any orientation and order.

        Args:
            vertex_count: Number of vertices
            edges: Vertex pairs; orientation and order are normalized
            name: Optional label

        Returns:
            Canonical Graph

        Raises:
            InvalidGraphError: On self-loops, duplicates or bad endpoints
        """
        seen: set[Edge] = set()
        for pair in edges:
            if len(pair) != 2:
                raise InvalidGraphError(f"Edge {list(pair)} must have two endpoints")
            u, v = int(pair[0]), int(pair[1])
            if u == v:
                raise InvalidGraphError(f"Self-loop at vertex {u}")
            edge = canonical_edge(u, v)
            if edge in seen:
                raise InvalidGraphError(f"Duplicate edge {edge}")
            seen.add(edge)
        try:
            return cls(vertex_count=vertex_count, edges=tuple(sorted(seen)), name=name)
        except ValidationError as exc:
            raise InvalidGraphError(str(exc)) from exc

    @property
    def edge_count(self) -> int:
        """Number of edges."""
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Sorted neighbour tuples, one per vertex."""
        neighbours: list[list[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            neighbours[u].append(v)
            neighbours[v].append(u)
        return tuple(tuple(sorted(row)) for row in neighbours)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        """Position of every canonical edge in ``edges``."""
        return {edge: position for position, edge in enumerate(self.edges)}

    def degree(self, vertex: int) -> int:
        """Number of neighbours of ``vertex``."""
        return len(self.adjacency[vertex])

    def has_edge(self, u: int, v: int) -> bool:
        """Whether {u, v} is an edge."""
        return canonical_edge(u, v) in self.edge_index

    def boundary(self, subset: Iterable[int]) -> list[Edge]:
        """Edges with exactly one endpoint in ``subset``, in canonical order."""
        members = set(subset)
        return [
            (u, v) for u, v in self.edges if (u in members) != (v in members)
        ]

    def incident_edges(self, subset: Iterable[int]) -> list[Edge]:
        """Edges with at least one endpoint in ``subset``, in canonical order."""
        members = set(subset)
        return [(u, v) for u, v in self.edges if u in members or v in members]

    def is_regular(self, degree: int | None = None) -> bool:
        """Whether all vertices share one degree (``degree`` if given)."""
        degrees = {len(row) for row in self.adjacency}
        if not degrees:
            return True
        if len(degrees) != 1:
            return False
        return degree is None or degrees == {degree}


class Scale(BaseModel):
    """One vertex subset ``S_i`` per vertex ``i``, each containing ``i``."""

    model_config = ConfigDict(frozen=True)

    sets: tuple[frozenset[int], ...] = Field(..., description="S_i indexed by vertex")
    radius: int | None = Field(
        default=None, ge=0, description="Ball radius when built from balls"
    )

    @model_validator(mode="after")
    def _check_sets(self) -> Scale:
        size = len(self.sets)
        for index, members in enumerate(self.sets):
            if not members:
                raise ValueError(f"Scale set {index} is empty")
            if index not in members:
                raise ValueError(f"Scale set {index} does not contain vertex {index}")
            outside = [v for v in members if not 0 <= v < size]
            if outside:
                raise ValueError(
                    f"Scale set {index} names vertices {sorted(outside)} outside 0..{size - 1}"
                )
        return self

    @classmethod
    def from_sets(
        cls, sets: Sequence[Iterable[int]], radius: int | None = None
    ) -> Scale:
        """Build a scale, raising ``InvalidScaleError`` on bad input."""
        try:
            return cls(sets=tuple(frozenset(s) for s in sets), radius=radius)
        except ValidationError as exc:
            raise InvalidScaleError(str(exc)) from exc

    @property
    def size(self) -> int:
        """Number of sets, equal to the vertex count of the graph."""
        return len(self.sets)

    def check(self, g: Graph) -> None:
        """Raise ``InvalidScaleError`` unless the scale belongs to ``g``."""
        if self.size != g.vertex_count:
            raise InvalidScaleError(
                f"Scale has {self.size} sets but the graph has {g.vertex_count} vertices"
            )

    def largest_set(self) -> int:
        """Size of the largest scale set."""
        return max((len(s) for s in self.sets), default=0)


@dataclass(frozen=True, slots=True)
class DistanceMatrix:
    """All-pairs path lengths; ``None`` marks vertices in different components."""

    dist: tuple[tuple[int | None, ...], ...]

    def __call__(self, i: int, j: int) -> int | None:
        return self.dist[i][j]

    @property
    def size(self) -> int:
        return len(self.dist)


__all__ = [
    "Edge",
    "canonical_edge",
    "Graph",
    "Scale",
    "DistanceMatrix",
]
