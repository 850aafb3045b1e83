"""Generators for the named graph families.

Labelings:

* ``hypercube(n)``: vertex ``u`` is the bit string of ``u``; edges flip one bit.
* ``grid(rows, cols)``: cell ``(r, c)`` is ``r * cols + c``.
* ``circular_ladder(k)``: outer cycle ``0..k-1``, inner cycle ``k..2k-1``,
  rungs ``i -- i + k``.
* ``heawood()``: points ``0..6`` and lines ``7..13`` of the Fano plane, line
  ``7 + y`` holding the points ``y, y + 1, y + 3`` (mod 7).
* ``petersen()``: outer 5-cycle ``0..4``, spokes ``i -- i + 5``, inner
  pentagram ``5 + i -- 5 + (i + 2) % 5``.
* ``cycle(k)`` and ``path(k)``: consecutive labels.
* ``wheel(k)``: ``cycle(k)`` plus hub ``k``.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Sequence

import networkx as nx

from propa.errors import InvalidGraphError
from propa.graphs.base import Edge, Graph


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InvalidGraphError(message)


def from_networkx(nx_graph: nx.Graph, name: str | None = None) -> Graph:
    """Convert a networkx graph whose nodes are ``0..n-1``."""
    return Graph.from_edges(nx_graph.number_of_nodes(), nx_graph.edges(), name=name)


def hypercube(n: int) -> Graph:
    """The ``n``-dimensional cube graph on bit strings of length ``n``."""
    _require(n >= 1, f"hypercube dimension must be >= 1, got {n}")
    edges = [
        (u, u | (1 << bit))
        for u in range(1 << n)
        for bit in range(n)
        if not u & (1 << bit)
    ]
    return Graph.from_edges(1 << n, edges, name=f"hypercube:{n}")


def grid(rows: int, cols: int) -> Graph:
    """Rectangular grid graph."""
    _require(rows >= 1 and cols >= 1, f"grid sides must be >= 1, got {rows}x{cols}")
    nx_graph = nx.convert_node_labels_to_integers(
        nx.grid_2d_graph(rows, cols), ordering="sorted"
    )
    return from_networkx(nx_graph, name=f"grid:{rows}x{cols}")


def circular_ladder(k: int) -> Graph:
    """Prism graph, the Cayley graph of Z_2 x Z_k."""
    _require(k >= 3, f"circular ladder needs k >= 3, got {k}")
    return from_networkx(nx.circular_ladder_graph(k), name=f"ladder:{k}")


def heawood() -> Graph:
    """Incidence graph of the Fano plane: 3-regular, 14 vertices, girth 6."""
    edges = [((y + shift) % 7, 7 + y) for y in range(7) for shift in (0, 1, 3)]
    return Graph.from_edges(14, edges, name="heawood")


def petersen() -> Graph:
    """Petersen graph: 3-regular, 10 vertices, girth 5."""
    return from_networkx(nx.petersen_graph(), name="petersen")


def cycle(k: int) -> Graph:
    """Cycle on ``k`` vertices."""
    _require(k >= 3, f"cycle needs k >= 3, got {k}")
    return from_networkx(nx.cycle_graph(k), name=f"cycle:{k}")


def path(k: int) -> Graph:
    """Path on ``k`` vertices."""
    _require(k >= 1, f"path needs k >= 1, got {k}")
    return from_networkx(nx.path_graph(k), name=f"path:{k}")


def wheel(k: int) -> Graph:
    """``cycle(k)`` with a hub vertex ``k`` joined to every cycle vertex."""
    _require(k >= 3, f"wheel needs k >= 3, got {k}")
    rim = [(i, (i + 1) % k) for i in range(k)]
    spokes = [(i, k) for i in range(k)]
    return Graph.from_edges(k + 1, rim + spokes, name=f"wheel:{k}")


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    """Disjoint union; each graph's labels are shifted past the previous ones."""
    _require(len(graphs) >= 1, "disjoint union needs at least one graph")
    edges: list[Edge] = []
    offset = 0
    for part in graphs:
        edges.extend((u + offset, v + offset) for u, v in part.edges)
        offset += part.vertex_count
    name = "union:" + "+".join(part.name or "?" for part in graphs)
    return Graph.from_edges(offset, edges, name=name)


def with_isolated_vertex(g: Graph) -> Graph:
    """Copy of ``g`` plus one isolated vertex labelled ``g.vertex_count``."""
    return Graph(
        vertex_count=g.vertex_count + 1,
        edges=g.edges,
        name=f"isolated:{g.name}" if g.name else None,
    )


def random_connected(n: int, extra_edges: int, seed: int) -> Graph:
    """Random connected graph: a random tree plus ``extra_edges`` more edges.

    The same ``(n, extra_edges, seed)`` always yields the same graph.
    """
    _require(n >= 1, f"random graph needs n >= 1, got {n}")
    rng = random.Random(seed)
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    missing = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    edges.update(rng.sample(missing, min(extra_edges, len(missing))))
    return Graph.from_edges(n, edges, name=f"random:{n}:{extra_edges}:{seed}")


def relabel(g: Graph, permutation: Iterable[int]) -> Graph:
    """Image of ``g`` under the vertex permutation ``v -> permutation[v]``."""
    image = list(permutation)
    return Graph.from_edges(
        g.vertex_count, [(image[u], image[v]) for u, v in g.edges], name=g.name
    )


__all__ = [
    "from_networkx",
    "hypercube",
    "grid",
    "circular_ladder",
    "heawood",
    "petersen",
    "cycle",
    "path",
    "wheel",
    "disjoint_union",
    "with_isolated_vertex",
    "random_connected",
    "relabel",
]
