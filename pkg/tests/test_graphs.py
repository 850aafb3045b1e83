"""Unit tests for graphs, scales, metric helpers and graph I/O."""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from pydantic import ValidationError

from propa.errors import InvalidEmbeddingError, InvalidGraphError, InvalidScaleError
from propa.graphs.base import Graph, Scale, canonical_edge
from propa.graphs.generators import (
    circular_ladder,
    cycle,
    disjoint_union,
    grid,
    heawood,
    hypercube,
    path,
    petersen,
    random_connected,
    relabel,
    wheel,
    with_isolated_vertex,
)
from propa.graphs.io import (
    format_graph_text,
    graph_from_json,
    graph_to_json,
    parse_generator_spec,
    parse_graph_text,
    read_graph,
    scale_from_json,
    scale_to_json,
    witness_to_dot,
)
from propa.graphs.metric import (
    all_pairs_distances,
    ball,
    ball_scale,
    components,
    diameter,
    dual_scale,
    girth,
    induced_subgraph,
    is_convex_subgraph,
    is_symmetric,
    truncated_family,
)


class TestGraph:
    """Tests for the Graph model."""

    def test_from_edges_normalizes(self) -> None:
        """Test orientation and order are canonicalized."""
        g = Graph.from_edges(3, [(2, 1), (1, 0)])
        assert g.edges == ((0, 1), (1, 2))
        assert g.edge_count == 2

    def test_self_loop_rejected(self) -> None:
        """Test self-loops raise."""
        with pytest.raises(InvalidGraphError, match="Self-loop"):
            Graph.from_edges(3, [(1, 1)])

    def test_duplicate_rejected(self) -> None:
        """Test duplicate edges raise."""
        with pytest.raises(InvalidGraphError, match="Duplicate"):
            Graph.from_edges(3, [(0, 1), (1, 0)])

    def test_out_of_range_rejected(self) -> None:
        """Test endpoints beyond the vertex count raise."""
        with pytest.raises(InvalidGraphError):
            Graph.from_edges(2, [(0, 2)])

    def test_direct_construction_requires_canonical_edges(self) -> None:
        """Test the model validator rejects reversed edges."""
        with pytest.raises(ValidationError):
            Graph(vertex_count=2, edges=((1, 0),))

    def test_adjacency_and_boundary(self) -> None:
        """Test neighbour lists and edge boundaries."""
        g = path(4)
        assert g.adjacency[1] == (0, 2)
        assert g.degree(0) == 1
        assert g.boundary({1, 2}) == [(0, 1), (2, 3)]
        assert g.incident_edges({0}) == [(0, 1)]
        assert g.has_edge(2, 1)

    def test_regularity(self) -> None:
        """Test regularity checks."""
        assert hypercube(3).is_regular(3)
        assert not path(3).is_regular()

    def test_canonical_edge(self) -> None:
        """Test canonical orientation."""
        assert canonical_edge(5, 2) == (2, 5)


class TestScale:
    """Tests for the Scale model."""

    def test_missing_center_rejected(self) -> None:
        """Test every S_i must contain i."""
        with pytest.raises(InvalidScaleError, match="does not contain"):
            Scale.from_sets([[1], [1]])

    def test_check_against_graph(self) -> None:
        """Test a scale must match the vertex count."""
        with pytest.raises(InvalidScaleError):
            Scale.from_sets([[0]]).check(path(2))

    def test_largest_set(self) -> None:
        """Test the largest set size."""
        assert ball_scale(grid(3, 3), 1).largest_set() == 5


class TestGenerators:
    """Tests for the named graph families."""

    @pytest.mark.parametrize(
        ("g", "vertices", "edges"),
        [
            (hypercube(3), 8, 12),
            (grid(3, 3), 9, 12),
            (circular_ladder(7), 14, 21),
            (heawood(), 14, 21),
            (petersen(), 10, 15),
            (cycle(5), 5, 5),
            (wheel(4), 5, 8),
        ],
    )
    def test_sizes(self, g: Graph, vertices: int, edges: int) -> None:
        """Test vertex and edge counts."""
        assert g.vertex_count == vertices
        assert g.edge_count == edges

    def test_heawood_lines(self) -> None:
        """Test line 7 holds the points 0, 1 and 3."""
        assert heawood().adjacency[7] == (0, 1, 3)

    def test_ladder_rungs(self) -> None:
        """Test rungs join i and i + k."""
        g = circular_ladder(7)
        assert all(g.has_edge(i, i + 7) for i in range(7))

    def test_disjoint_union_shifts_labels(self) -> None:
        """Test labels of later parts are shifted."""
        g = disjoint_union([path(2), path(3)])
        assert g.edges == ((0, 1), (2, 3), (3, 4))
        assert g.name == "union:path:2+path:3"

    def test_isolated_vertex(self) -> None:
        """Test the added vertex has no neighbours."""
        g = with_isolated_vertex(cycle(4))
        assert g.vertex_count == 5
        assert g.degree(4) == 0

    def test_random_is_reproducible(self) -> None:
        """Test the same seed gives the same connected graph."""
        first = random_connected(8, 3, seed=42)
        assert first == random_connected(8, 3, seed=42)
        assert first.edge_count == 10
        assert len(components(first)) == 1

    def test_relabel(self) -> None:
        """Test relabelling maps edges."""
        assert relabel(path(3), [2, 1, 0]).edges == ((0, 1), (1, 2))

    def test_invalid_parameters(self) -> None:
        """Test parameters below the family minimum raise."""
        with pytest.raises(InvalidGraphError):
            cycle(2)
        with pytest.raises(InvalidGraphError):
            hypercube(0)


class TestMetric:
    """Tests for distances, balls, scales and convexity."""

    def test_distances_across_components(self) -> None:
        """Test unreachable pairs are None."""
        dm = all_pairs_distances(disjoint_union([path(2), path(2)]))
        assert dm(0, 1) == 1
        assert dm(0, 2) is None
        assert diameter(dm) == 1

    def test_ball(self) -> None:
        """Test closed balls."""
        assert ball(cycle(5), 0, 1) == frozenset({4, 0, 1})
        assert ball(cycle(5), 0, 0) == frozenset({0})

    def test_negative_radius(self) -> None:
        """Test negative radii raise."""
        with pytest.raises(InvalidScaleError):
            ball_scale(cycle(5), -1)

    def test_ball_scale_is_symmetric(self) -> None:
        """Test ball scales equal their duals."""
        assert is_symmetric(ball_scale(grid(3, 3), 1))

    def test_dual_scale(self) -> None:
        """Test the dual collects every set holding a vertex."""
        sc = Scale.from_sets([[0, 1], [1], [2]])
        assert dual_scale(sc).sets == (
            frozenset({0}),
            frozenset({0, 1}),
            frozenset({2}),
        )
        assert not is_symmetric(sc)

    @pytest.mark.parametrize(
        ("g", "expected"),
        [(heawood(), 6), (petersen(), 5), (hypercube(3), 4), (path(4), None)],
    )
    def test_girth(self, g: Graph, expected: int | None) -> None:
        """Test shortest cycle lengths."""
        assert girth(g) == expected

    def test_components_and_induced_subgraph(self) -> None:
        """Test component listing and relabelled induced subgraphs."""
        assert components(disjoint_union([path(2), path(3)])) == [[0, 1], [2, 3, 4]]
        sub, labels = induced_subgraph(cycle(5), [3, 1, 2])
        assert labels == [1, 2, 3]
        assert sub.edges == ((0, 1), (1, 2))

    def test_convex_subgraphs(self) -> None:
        """Test convexity of embeddings."""
        assert is_convex_subgraph(cycle(4), wheel(4), [0, 1, 2, 3])
        assert is_convex_subgraph(path(3), cycle(4), [0, 1, 2])
        assert not is_convex_subgraph(path(4), cycle(4), [0, 1, 2, 3])

    def test_bad_embedding(self) -> None:
        """Test embeddings that drop edges raise."""
        with pytest.raises(InvalidEmbeddingError):
            is_convex_subgraph(path(3), cycle(4), [0, 2, 1])

    def test_truncated_family(self) -> None:
        """Test traces of the ambient balls on the subgraph."""
        traces = truncated_family(cycle(4), wheel(4), [0, 1, 2, 3], 1)
        assert traces == [
            frozenset({0, 1, 2}),
            frozenset({0, 1, 3}),
            frozenset({0, 2, 3}),
            frozenset({1, 2, 3}),
            frozenset({0, 1, 2, 3}),
        ]


class TestGraphIO:
    """Tests for text, JSON and generator specs."""

    def test_parse_text(self) -> None:
        """Test the line format with comments."""
        g = parse_graph_text("c a path\np 3\ne 0 1\n\ne 2 1\n")
        assert g.vertex_count == 3
        assert g.edges == ((0, 1), (1, 2))

    def test_parse_text_errors(self) -> None:
        """Test malformed text raises with context."""
        with pytest.raises(InvalidGraphError, match="Missing"):
            parse_graph_text("e 0 1\n")
        with pytest.raises(InvalidGraphError, match="Line 2"):
            parse_graph_text("p 2\ne 0 x\n")
        with pytest.raises(InvalidGraphError, match="repeated"):
            parse_graph_text("p 2\np 3\n")

    def test_format_text(self) -> None:
        """Test rendering in the line format."""
        assert format_graph_text(path(3)) == "c path:3\np 3\ne 0 1\ne 1 2\n"

    def test_json(self) -> None:
        """Test the JSON form."""
        data = graph_to_json(cycle(3))
        assert data == {"vertices": 3, "edges": [[0, 1], [0, 2], [1, 2]], "name": "cycle:3"}
        assert graph_from_json(data) == cycle(3)
        with pytest.raises(InvalidGraphError):
            graph_from_json({"edges": []})

    def test_read_graph(self, tmp_path: Path) -> None:
        """Test reading both file forms."""
        text_file = tmp_path / "g.txt"
        text_file.write_text("p 2\ne 0 1\n")
        json_file = tmp_path / "g.json"
        json_file.write_text(json.dumps({"vertices": 2, "edges": [[0, 1]]}))
        assert read_graph(text_file).edges == read_graph(json_file).edges

    @pytest.mark.parametrize(
        ("spec", "vertices"),
        [
            ("hypercube:3", 8),
            ("grid:3x3", 9),
            ("ladder:7", 14),
            ("heawood", 14),
            ("wheel:4", 5),
            ("union:cycle:3+path:2", 5),
            ("isolated:cycle:3", 4),
            ("random:8:2:1", 8),
        ],
    )
    def test_generator_specs(self, spec: str, vertices: int) -> None:
        """Test generator specs."""
        assert parse_generator_spec(spec).vertex_count == vertices

    def test_bad_generator_specs(self) -> None:
        """Test unknown or malformed specs raise."""
        with pytest.raises(InvalidGraphError, match="Unknown"):
            parse_generator_spec("bogus:3")
        with pytest.raises(InvalidGraphError, match="expects"):
            parse_generator_spec("grid:3")
        with pytest.raises(InvalidGraphError, match="no parameters"):
            parse_generator_spec("heawood:1")

    def test_scale_json(self) -> None:
        """Test scales from radius or explicit sets."""
        g = path(3)
        assert scale_from_json({"radius": 1}, g) == ball_scale(g, 1)
        explicit = scale_from_json({"sets": [[0, 1], [1], [2]]}, g)
        assert explicit.sets[0] == frozenset({0, 1})
        assert scale_to_json(ball_scale(g, 0)) == {"sets": [[0], [1], [2]], "radius": 0}
        with pytest.raises(InvalidScaleError):
            scale_from_json({}, g)

    def test_witness_dot(self) -> None:
        """Test DOT export marks the witness and its boundary."""
        dot = witness_to_dot(path(3), [0], label="gamma")
        assert 'label="gamma"' in dot
        assert "0 -- 1 [penwidth=3]" in dot
        assert "1 -- 2;" in dot
