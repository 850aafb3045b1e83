"""Path-length metric, scales, girth and convexity."""

from __future__ import annotations

from collections import deque
from collections.abc import Sequence

import networkx as nx

from propa.errors import InvalidEmbeddingError, InvalidScaleError
from propa.graphs.base import DistanceMatrix, Graph, Scale


def to_networkx(g: Graph) -> nx.Graph:
    """Convert to an undirected networkx graph on vertices ``0..n-1``."""
    nx_graph = nx.Graph(name=g.name or "")
    nx_graph.add_nodes_from(range(g.vertex_count))
    nx_graph.add_edges_from(g.edges)
    return nx_graph


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """Breadth-first shortest path lengths between all vertex pairs.

    Args:
        g: Graph to measure

    Returns:
        DistanceMatrix with ``None`` across components
    """
    nx_graph = to_networkx(g)
    rows: list[tuple[int | None, ...]] = []
    for source in range(g.vertex_count):
        lengths = nx.single_source_shortest_path_length(nx_graph, source)
        rows.append(tuple(lengths.get(target) for target in range(g.vertex_count)))
    return DistanceMatrix(dist=tuple(rows))


def diameter(dm: DistanceMatrix) -> int:
    """Largest finite distance; 0 for graphs without vertex pairs."""
    return max(
        (d for row in dm.dist for d in row if d is not None),
        default=0,
    )


def ball(g: Graph, center: int, radius: int) -> frozenset[int]:
    """Vertices at distance at most ``radius`` from ``center``."""
    seen = {center}
    frontier = deque([(center, 0)])
    while frontier:
        vertex, depth = frontier.popleft()
        if depth == radius:
            continue
        for neighbour in g.adjacency[vertex]:
            if neighbour not in seen:
                seen.add(neighbour)
                frontier.append((neighbour, depth + 1))
    return frozenset(seen)


def ball_scale(g: Graph, s: int) -> Scale:
    """Scale of closed balls of radius ``s`` around every vertex."""
    if s < 0:
        raise InvalidScaleError(f"Ball radius must be nonnegative, got {s}")
    return Scale(sets=tuple(ball(g, i, s) for i in range(g.vertex_count)), radius=s)


def dual_scale(sc: Scale) -> Scale:
    """Scale whose set at ``i`` collects every ``j`` with ``i`` in ``S_j``."""
    members: list[set[int]] = [set() for _ in range(sc.size)]
    for j, scale_set in enumerate(sc.sets):
        for i in scale_set:
            members[i].add(j)
    empty = [i for i, found in enumerate(members) if not found]
    if empty:
        raise InvalidScaleError(f"Dual scale sets {empty} are empty")
    return Scale.from_sets(members, radius=sc.radius)


def is_symmetric(sc: Scale) -> bool:
    """Whether ``sc`` equals its dual scale."""
    return dual_scale(sc).sets == sc.sets


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, ``None`` for forests."""
    best: int | None = None
    for root in range(g.vertex_count):
        depth = {root: 0}
        parent = {root: -1}
        frontier = deque([root])
        while frontier:
            u = frontier.popleft()
            if best is not None and 2 * depth[u] >= best:
                break
            for v in g.adjacency[u]:
                if v not in depth:
                    depth[v] = depth[u] + 1
                    parent[v] = u
                    frontier.append(v)
                elif v != parent[u]:
                    length = depth[u] + depth[v] + 1
                    if best is None or length < best:
                        best = length
    return best


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by least vertex."""
    found = [sorted(c) for c in nx.connected_components(to_networkx(g))]
    return sorted(found, key=lambda component: component[0])


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph relabelled in increasing order of ``vertices``.

    Returns:
        The subgraph and the list mapping its labels back to ``g``
    """
    labels = sorted(set(vertices))
    position = {v: i for i, v in enumerate(labels)}
    edges = [
        (position[u], position[v])
        for u, v in g.edges
        if u in position and v in position
    ]
    sub = Graph.from_edges(len(labels), edges, name=g.name)
    return sub, labels


def _check_embedding(h: Graph, g: Graph, embedding: Sequence[int]) -> None:
    if len(embedding) != h.vertex_count:
        raise InvalidEmbeddingError(
            f"Embedding has {len(embedding)} entries for {h.vertex_count} vertices"
        )
    if any(not 0 <= v < g.vertex_count for v in embedding):
        raise InvalidEmbeddingError("Embedding maps outside the ambient graph")
    if len(set(embedding)) != len(embedding):
        raise InvalidEmbeddingError("Embedding is not injective")
    for u, v in h.edges:
        if not g.has_edge(embedding[u], embedding[v]):
            raise InvalidEmbeddingError(
                f"Edge ({u}, {v}) is not mapped onto an edge of the ambient graph"
            )


def is_convex_subgraph(h: Graph, g: Graph, embedding: Sequence[int]) -> bool:
    """Whether ``h`` keeps its path metric inside ``g`` under ``embedding``.

    Only pairs lying in one component of ``g`` are compared.

    Raises:
        InvalidEmbeddingError: If the map is not injective and edge-preserving
    """
    _check_embedding(h, g, embedding)
    inner = all_pairs_distances(h)
    outer = all_pairs_distances(g)
    for i in range(h.vertex_count):
        for j in range(i + 1, h.vertex_count):
            ambient = outer(embedding[i], embedding[j])
            if ambient is not None and inner(i, j) != ambient:
                return False
    return True


def truncated_family(
    h: Graph, g: Graph, embedding: Sequence[int], s: int
) -> list[frozenset[int]]:
    """Traces of the ``s``-balls of ``g`` on ``h``, in ``h`` labels.

    Every vertex of ``h`` lies in at least one trace. Duplicates are dropped and
    the result is sorted by (size, members).
    """
    _check_embedding(h, g, embedding)
    back = {v: i for i, v in enumerate(embedding)}
    traces: set[frozenset[int]] = set()
    for center in range(g.vertex_count):
        trace = frozenset(back[v] for v in ball(g, center, s) if v in back)
        if trace:
            traces.add(trace)
    return sorted(traces, key=lambda t: (len(t), sorted(t)))


__all__ = [
    "to_networkx",
    "all_pairs_distances",
    "diameter",
    "ball",
    "ball_scale",
    "dual_scale",
    "is_symmetric",
    "girth",
    "components",
    "induced_subgraph",
    "is_convex_subgraph",
    "truncated_family",
]
