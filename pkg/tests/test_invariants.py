"""Tests for epsilon, Cheeger constants, the relaxations and the closed forms."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from propa.errors import (
    CertificateMismatchError,
    EnumerationCapError,
    InvalidEmbeddingError,
    LpSizeError,
)
from propa.exact.program import Relation
from propa.flows.verify import verify_flow_certificate, verify_measure_family
from propa.graphs.base import Graph, Scale
from propa.graphs.generators import (
    circular_ladder,
    cycle,
    disjoint_union,
    grid,
    heawood,
    hypercube,
    path,
    wheel,
    with_isolated_vertex,
)
from propa.graphs.metric import ball_scale, dual_scale, is_convex_subgraph
from propa.invariants import (
    CheegerMethod,
    Method,
    ball_volume,
    cheeger_at_scale,
    cube_dual_certificate,
    cube_epsilon_formula,
    cube_layer_weight,
    cube_primal_certificate,
    epsilon_at_scale,
    epsilon_sequence,
    girth_cheeger_formula,
    girth_epsilon_formula,
    girth_epsilon_scale_limit,
    mean_property_a_at_scale,
    sparsest_cut_at_scale,
    subgraph_scale_inequality_check,
    tree_isoperimetric_number,
    truncated_isoperimetric_value,
    uniform_demand_at_scale,
    uniform_flows_at_scale,
)
from propa.invariants.epsilon import solve_checked
from propa.problems import build_measures


class TestEpsilon:
    """Tests for epsilon_at_scale."""

    @pytest.mark.parametrize("method", [Method.PRIMAL, Method.DUAL, Method.BOTH, Method.LIFT])
    def test_square_all_methods(self, square: Graph, method: Method) -> None:
        """Test every method agrees on the 2-cube."""
        report = epsilon_at_scale(square, 1, method=method)
        assert report.epsilon == Fraction(2, 3)
        assert report.radius == 1

    def test_certificates_verify(self, cube: Graph) -> None:
        """Test both certificates of the 3-cube verify independently."""
        report = epsilon_at_scale(cube, 1)
        sc = ball_scale(cube, 1)
        assert report.epsilon == 1
        assert report.primal is not None and report.dual is not None
        assert verify_measure_family(cube, sc, report.primal).valid
        assert verify_flow_certificate(cube, dual_scale(sc), report.dual).valid

    def test_report_dict(self, square: Graph) -> None:
        """Test statistics appear only when asked for."""
        report = epsilon_at_scale(square, 1)
        data = report.to_dict()
        assert data["epsilon"] == "2/3"
        assert data["primal"]["kind"] == "measures"
        assert data["dual"]["kind"] == "flows"
        assert "statistics" not in data
        assert "primal" in report.to_dict(include_statistics=True)["statistics"]

    @pytest.mark.parametrize(
        ("g", "radius", "expected"),
        [
            (hypercube(3), 2, Fraction(2, 7)),
            (grid(3, 3), 1, Fraction(12, 13)),
            (circular_ladder(7), 1, Fraction(1)),
            (cycle(4), 2, Fraction(0)),
            (path(1), 1, Fraction(0)),
        ],
    )
    def test_known_values(self, g: Graph, radius: int, expected: Fraction) -> None:
        """Test exact values on small families."""
        assert epsilon_at_scale(g, radius, method=Method.PRIMAL).epsilon == expected

    def test_chordal_ten(self, chordal_ten: Graph) -> None:
        """Test a graph whose optimal demands are not uniform."""
        report = epsilon_at_scale(chordal_ten, 1)
        assert report.epsilon == Fraction(16, 17)

    def test_radius_zero(self, square: Graph) -> None:
        """Test point masses vary by 2 across every edge."""
        assert epsilon_at_scale(square, 0).epsilon == 2

    def test_explicit_scale(self) -> None:
        """Test an explicit asymmetric scale."""
        g = path(2)
        sc = Scale.from_sets([[0, 1], [1]])
        assert epsilon_at_scale(g, sc).epsilon == 0

    def test_disjoint_union_takes_the_maximum(self) -> None:
        """Test components are solved separately."""
        g = disjoint_union([hypercube(2), hypercube(3)])
        report = epsilon_at_scale(g, 1)
        assert report.epsilon == 1
        assert report.components == 2
        sc = ball_scale(g, 1)
        assert report.primal is not None and report.dual is not None
        assert verify_measure_family(g, sc, report.primal).valid
        assert verify_flow_certificate(g, dual_scale(sc), report.dual).valid

    def test_isolated_vertex(self) -> None:
        """Test an isolated vertex contributes zero."""
        assert epsilon_at_scale(with_isolated_vertex(cycle(4)), 1).epsilon == Fraction(2, 3)

    def test_lp_size_ceiling(self, square: Graph, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test the configured column ceiling is enforced."""
        monkeypatch.setenv("PROPA_MAX_LP_COLS", "5")
        with pytest.raises(LpSizeError):
            epsilon_at_scale(square, 1)

    def test_lift_cap(self, cube: Graph, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test the lift method honours the enumeration cap."""
        monkeypatch.setenv("PROPA_ENUMERATION_CAP", "3")
        with pytest.raises(EnumerationCapError):
            epsilon_at_scale(cube, 1, method=Method.LIFT)

    def test_solve_checked_rejects_infeasible(self, square: Graph) -> None:
        """Test non-optimal outcomes raise."""
        ilp = build_measures(square, ball_scale(square, 1))
        x = ilp.column("x", 0, 0)
        ilp.lp.add_constraint({x: 1}, Relation.EQ, 2)
        with pytest.raises(CertificateMismatchError, match="infeasible"):
            solve_checked(ilp)

    def test_sequence(self) -> None:
        """Test sequences over graphs, serially and in worker processes."""
        graphs = [hypercube(2), hypercube(3)]
        assert epsilon_sequence(graphs, 1) == [Fraction(2, 3), Fraction(1)]
        assert epsilon_sequence(graphs, 1, jobs=2) == [Fraction(2, 3), Fraction(1)]

    @pytest.mark.slow
    def test_heawood_radius_two(self) -> None:
        """Test the Heawood graph meets the girth formula."""
        assert epsilon_at_scale(heawood(), 2, method=Method.PRIMAL).epsilon == Fraction(4, 5)

    @pytest.mark.slow
    @pytest.mark.parametrize(("n", "s"), [(4, 1), (5, 1), (4, 2), (5, 2)])
    def test_cube_formula_by_lp(self, n: int, s: int) -> None:
        """Test the LP agrees with the cube formula."""
        report = epsilon_at_scale(hypercube(n), s, method=Method.PRIMAL)
        assert report.epsilon == cube_epsilon_formula(n, s)

    @pytest.mark.slow
    def test_heawood_radius_one(self) -> None:
        """Test the Heawood graph at radius 1, where its girth 6 exceeds 3."""
        report = epsilon_at_scale(heawood(), 1)
        assert report.epsilon == girth_epsilon_formula(3, 1) == 1


class TestCheeger:
    """Tests for Cheeger constants and sparsest cuts."""

    def test_grid(self) -> None:
        """Test the 3x3 grid at radius 1."""
        report = cheeger_at_scale(grid(3, 3), 1)
        assert report.gamma == 1
        assert report.witness is not None
        assert Fraction(report.boundary or 0, len(report.witness)) == 1

    def test_cube_witness_tie_break(self, cube: Graph) -> None:
        """Test ties go to the lexicographically first set."""
        report = cheeger_at_scale(cube, 1)
        assert report.gamma == Fraction(3, 2)
        assert report.witness == (0, 1, 2, 4)
        assert report.boundary == 6

    def test_lp_method(self, cube: Graph) -> None:
        """Test the LP method on an edge-transitive graph."""
        report = cheeger_at_scale(cube, 1, method=CheegerMethod.LP)
        assert report.gamma == Fraction(3, 2)
        assert report.witness is None

    def test_lp_method_edgeless(self) -> None:
        """Test the LP method needs an edge."""
        with pytest.raises(ValueError, match="at least one edge"):
            cheeger_at_scale(Graph(vertex_count=2), 1, method=CheegerMethod.LP)

    def test_brute_force_cap(self, cube: Graph) -> None:
        """Test brute force stops at the cap."""
        with pytest.raises(EnumerationCapError):
            cheeger_at_scale(cube, 1, cap=3)

    def test_heawood(self) -> None:
        """Test the Heawood graph meets the girth Cheeger formula."""
        assert cheeger_at_scale(heawood(), 2).gamma == girth_cheeger_formula(3, 2)

    def test_sparsest_cut(self, cube: Graph) -> None:
        """Test uniform capacities reproduce the Cheeger witness."""
        kappa = dict.fromkeys(cube.edges, Fraction(1, 12))
        report = sparsest_cut_at_scale(cube, 1, kappa)
        assert report.value == Fraction(1, 8)
        assert report.witness == (0, 1, 2, 4)
        with pytest.raises(ValueError):
            sparsest_cut_at_scale(cube, 1, {(0, 1): Fraction(-1)})


class TestRelaxations:
    """Tests for the uniform and mean relaxations."""

    def test_uniform_flows(self) -> None:
        """Test the 3x3 grid uniform optimum and its certificate."""
        report = uniform_flows_at_scale(grid(3, 3), 1)
        assert report.value == Fraction(3, 4)
        assert report.certificate is not None
        assert report.to_dict()["certificate"]["kind"] == "flows"

    def test_uniform_flows_edgeless(self) -> None:
        """Test the edgeless convention carries no certificate."""
        report = uniform_flows_at_scale(Graph(vertex_count=2), 1)
        assert report.value == 0
        assert report.certificate is None

    def test_uniform_demand(self) -> None:
        """Test the shared-demand optimum sits below epsilon."""
        report = uniform_demand_at_scale(grid(3, 3), 1)
        assert Fraction(3, 4) <= report.value <= Fraction(12, 13)

    def test_mean(self) -> None:
        """Test the mean relaxation and its derived totals."""
        report = mean_property_a_at_scale(grid(3, 3), 1)
        data = report.to_dict()
        assert report.value == Fraction(3, 4)
        assert data["total"] == "9"
        assert data["per_vertex"] == "1/12"


class TestFormulas:
    """Tests for the closed forms."""

    @pytest.mark.parametrize(
        ("n", "s", "expected"),
        [
            (2, 1, Fraction(2, 3)),
            (3, 1, Fraction(1)),
            (3, 2, Fraction(2, 7)),
            (4, 1, Fraction(6, 5)),
            (5, 1, Fraction(4, 3)),
            (4, 2, Fraction(6, 11)),
            (5, 2, Fraction(3, 4)),
            (3, 3, Fraction(0)),
        ],
    )
    def test_cube(self, n: int, s: int, expected: Fraction) -> None:
        """Test cube values."""
        assert cube_epsilon_formula(n, s) == expected

    def test_cube_certificates_match_formula(self) -> None:
        """Test both explicit cube certificates attain the formula."""
        for n, s in [(3, 1), (4, 2), (5, 2)]:
            assert cube_primal_certificate(n, s).epsilon == cube_epsilon_formula(n, s)
            assert cube_dual_certificate(n, s).objective == cube_epsilon_formula(n, s)
        with pytest.raises(ValueError):
            cube_dual_certificate(3, 3)

    def test_layer_weights_decrease(self) -> None:
        """Test layer weights never increase."""
        weights = [cube_layer_weight(6, m) for m in range(6)]
        assert weights == sorted(weights, reverse=True)
        assert ball_volume(3, 1) == 4

    @pytest.mark.parametrize(
        ("d", "s", "expected"),
        [(3, 0, Fraction(2)), (3, 1, Fraction(1)), (3, 2, Fraction(4, 5))],
    )
    def test_girth(self, d: int, s: int, expected: Fraction) -> None:
        """Test the girth formula."""
        assert girth_epsilon_formula(d, s) == expected

    @pytest.mark.parametrize(
        ("d", "s", "expected"),
        [(3, 2, Fraction(6, 5)), (3, 0, Fraction(3)), (4, 1, Fraction(12, 5))],
    )
    def test_girth_cheeger(self, d: int, s: int, expected: Fraction) -> None:
        """Test the girth Cheeger formula."""
        assert girth_cheeger_formula(d, s) == expected

    def test_limit(self) -> None:
        """Test the large-scale limit is approached from above."""
        limit = girth_epsilon_scale_limit(3)
        assert limit == Fraction(2, 3)
        assert girth_epsilon_formula(3, 12) > limit
        assert girth_epsilon_formula(3, 12) - limit < Fraction(1, 1000)

    @pytest.mark.parametrize(
        ("d", "n", "k", "expected"),
        [(3, 1, 1, Fraction(3)), (3, 10, 1, Fraction(6, 5)), (3, 4, 2, Fraction(2))],
    )
    def test_tree(self, d: int, n: int, k: int, expected: Fraction) -> None:
        """Test tree isoperimetric numbers."""
        assert tree_isoperimetric_number(d, n, k) == expected

    def test_invalid_arguments(self) -> None:
        """Test degrees, scales and component counts are validated."""
        with pytest.raises(ValueError, match="Degree"):
            girth_epsilon_formula(2, 1)
        with pytest.raises(ValueError, match="nonnegative"):
            girth_cheeger_formula(3, -1)
        with pytest.raises(ValueError):
            tree_isoperimetric_number(3, 2, 3)
        with pytest.raises(ValueError):
            cube_epsilon_formula(0, 1)


def _sub_box(seed: int) -> tuple[Graph, list[int]]:
    """A random sub-box of the 4x4 grid and its embedding."""
    rng = random.Random(seed)
    rows, cols = rng.randint(1, 3), rng.randint(2, 3)
    top, left = rng.randint(0, 4 - rows), rng.randint(0, 4 - cols)
    embedding = [(top + i) * 4 + left + j for i in range(rows) for j in range(cols)]
    return grid(rows, cols), embedding


def _subcube(seed: int) -> tuple[Graph, list[int]]:
    """A random face of the 4-cube and its embedding."""
    rng = random.Random(seed)
    free = sorted(rng.sample(range(4), rng.randint(1, 3)))
    fixed = sum(1 << bit for bit in range(4) if bit not in free and rng.random() < 0.5)
    embedding = [
        fixed | sum(1 << bit for k, bit in enumerate(free) if x >> k & 1)
        for x in range(1 << len(free))
    ]
    return hypercube(len(free)), embedding


CONVEX_PAIRS = [
    pytest.param(*_sub_box(seed), grid(4, 4), id=f"grid-box-{seed}") for seed in range(5)
] + [
    pytest.param(*_subcube(seed), hypercube(4), marks=pytest.mark.slow, id=f"face-{seed}")
    for seed in range(5)
]


class TestSubgraphCheck:
    """Tests for the convex subgraph inequality check."""

    def test_cycle_in_wheel(self) -> None:
        """Test the chain of inequalities on a 4-cycle inside a wheel."""
        h, g = cycle(4), wheel(4)
        check = subgraph_scale_inequality_check(h, g, [0, 1, 2, 3], 1)
        assert check
        assert check.doubled_h == 0
        assert check.truncated == 0
        assert check.ambient_g == 0
        assert epsilon_at_scale(h, 1).epsilon == Fraction(2, 3)
        assert check.to_dict()["holds"] is True

    def test_path_in_cycle(self) -> None:
        """Test a geodesic path inside a long cycle."""
        h, g = path(3), cycle(8)
        check = subgraph_scale_inequality_check(h, g, [0, 1, 2], 1)
        assert check.holds
        assert check.truncated == truncated_isoperimetric_value(h, g, [0, 1, 2], 1)

    @pytest.mark.parametrize(("h", "embedding", "g"), CONVEX_PAIRS)
    def test_random_convex_pairs(self, h: Graph, embedding: list[int], g: Graph) -> None:
        """Test the chain holds for sub-boxes of a grid and faces of a cube."""
        assert is_convex_subgraph(h, g, embedding)
        assert subgraph_scale_inequality_check(h, g, embedding, 1).holds

    def test_non_convex(self) -> None:
        """Test non-convex embeddings raise."""
        with pytest.raises(InvalidEmbeddingError, match="not convex"):
            subgraph_scale_inequality_check(path(4), cycle(4), [0, 1, 2, 3], 1)
