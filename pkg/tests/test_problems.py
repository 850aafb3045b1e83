"""Unit tests for subset enumeration, LP builders and certificate extraction."""

from __future__ import annotations

from fractions import Fraction

import pytest

from propa.errors import EnumerationCapError, LpSizeError
from propa.exact.program import check_feasible
from propa.flows.verify import verify_flow_certificate, verify_partition_family
from propa.graphs.base import Graph
from propa.graphs.generators import cycle, grid, path
from propa.graphs.metric import ball, ball_scale, dual_scale
from propa.problems import (
    ProblemKind,
    build_fixed_capacity_flows,
    build_isoperimetric,
    build_isoperimetric_dual,
    build_mean_property_a,
    build_measures,
    build_partition,
    build_pseudo_flows,
    build_single_column,
    build_uniform_demand_flows,
    build_uniform_flows,
    connected_subsets,
    demands_and_capacities,
    enumerate_subsets,
    flat_partition_from_solution,
    flow_certificate_from_solution,
    is_connected_subset,
    measure_family_from_solution,
    partition_family_from_solution,
    variable_name,
)
from propa.problems.subsets import all_subsets, enumerate_family_subsets


class TestSubsets:
    """Tests for subset enumeration."""

    def test_connectivity(self) -> None:
        """Test induced connectivity."""
        g = path(4)
        assert is_connected_subset(g, {1, 2})
        assert not is_connected_subset(g, {0, 2})
        assert not is_connected_subset(g, set())

    def test_connected_subsets_of_a_path(self) -> None:
        """Test every connected subset appears once."""
        found = list(connected_subsets(path(3), {0, 1, 2}))
        assert len(found) == len(set(found)) == 6
        assert frozenset({0, 2}) not in found

    def test_connected_subsets_of_a_cycle(self) -> None:
        """Test the 4-cycle has 13 connected subsets."""
        found = set(connected_subsets(cycle(4), range(4)))
        brute = {s for s in all_subsets(range(4)) if is_connected_subset(cycle(4), s)}
        assert found == brute
        assert len(found) == 13

    def test_family_is_deduplicated(self, square: Graph) -> None:
        """Test subsets shared by several sets are listed once with their first owner."""
        family = enumerate_subsets(square, ball_scale(square, 1))
        assert len(family) == len(set(family.subsets))
        index = family.subsets.index(frozenset({0}))
        assert family.owners[index] == 0
        assert all(family.connected)

    def test_all_subsets_option(self, square: Graph) -> None:
        """Test disconnected subsets are kept when asked."""
        family = enumerate_subsets(square, ball_scale(square, 1), connected_only=False)
        position = family.subsets.index(frozenset({1, 2}))
        assert not family.connected[position]

    def test_cap(self, square: Graph) -> None:
        """Test sets above the cap raise."""
        with pytest.raises(EnumerationCapError, match="set 0 has 3 vertices"):
            enumerate_subsets(square, ball_scale(square, 1), cap=2)
        with pytest.raises(EnumerationCapError):
            enumerate_family_subsets(square, [frozenset(range(4))], cap=3)


class TestIndexedLp:
    """Tests for the indexed LP wrapper."""

    def test_variable_names(self) -> None:
        """Test diagnostic names."""
        assert variable_name(("x", 3, 7)) == "x_3_7"

    def test_size_ceiling(self, square: Graph) -> None:
        """Test oversized LPs raise before solving."""
        ilp = build_measures(square, ball_scale(square, 1))
        with pytest.raises(LpSizeError, match="ceiling is 5"):
            ilp.check_size(ceiling=5)

    def test_duplicate_key(self, square: Graph) -> None:
        """Test a key may only be defined once."""
        ilp = build_measures(square, ball_scale(square, 1))
        with pytest.raises(KeyError):
            ilp.add(("e",))

    def test_missing_variable_reads_zero(self, square: Graph) -> None:
        """Test omitted variables read as zero."""
        ilp = build_measures(square, ball_scale(square, 1))
        solution = ilp.solve()
        assert ilp.value(solution, "x", 0, 3) == 0


class TestPrimalProblems:
    """Tests for the measure and partition LPs."""

    def test_measures(self, square: Graph) -> None:
        """Test the 2-cube at radius 1."""
        ilp = build_measures(square, ball_scale(square, 1))
        solution = ilp.solve()
        assert solution.objective_value == Fraction(2, 3)
        assert check_feasible(ilp.lp, solution.assignment)
        mf = measure_family_from_solution(ilp, solution, 4)
        assert mf.epsilon == Fraction(2, 3)
        assert all(sum(m.values()) == 1 for m in mf.xi)

    def test_partition_matches_dual_measures(self) -> None:
        """Test the partition LP on a scale equals the measures LP on its dual."""
        g = path(3)
        sc = ball_scale(g, 1)
        partition = build_partition(g, sc)
        solution = partition.solve()
        measures = build_measures(g, dual_scale(sc)).solve()
        assert solution.objective_value == measures.objective_value
        pf = partition_family_from_solution(partition, solution)
        assert verify_partition_family(g, sc, pf).valid

    def test_mean_relaxation(self, square: Graph) -> None:
        """Test the mean relaxation on the 2-cube."""
        ilp = build_mean_property_a(square, ball_scale(square, 1))
        assert ilp.solve().objective_value == Fraction(2, 3)

    def test_mean_relaxation_edgeless(self) -> None:
        """Test the edgeless convention."""
        g = Graph(vertex_count=2)
        ilp = build_mean_property_a(g, ball_scale(g, 1))
        assert ilp.convention_optimum == 0
        assert ilp.solve().objective_value == 0

    def test_wrong_kind(self, square: Graph) -> None:
        """Test certificates are read only from matching LPs."""
        ilp = build_pseudo_flows(square, ball_scale(square, 1))
        with pytest.raises(ValueError, match="Cannot read"):
            measure_family_from_solution(ilp, ilp.solve(), 4)


class TestFlowProblems:
    """Tests for the pseudo-flow LPs."""

    def test_pseudo_flows(self, square: Graph) -> None:
        """Test the dual LP and its certificate on the 2-cube."""
        dual_sc = ball_scale(square, 1)
        ilp = build_pseudo_flows(square, dual_sc)
        solution = ilp.solve()
        assert solution.objective_value == Fraction(2, 3)
        fc = flow_certificate_from_solution(ilp, solution, 4)
        assert verify_flow_certificate(square, dual_sc, fc).valid
        assert fc.objective == Fraction(2, 3)

    def test_uniform_flows(self) -> None:
        """Test the uniform optimum of the 3x3 grid."""
        g = grid(3, 3)
        ilp = build_uniform_flows(g, ball_scale(g, 1))
        solution = ilp.solve()
        assert solution.objective_value == Fraction(3, 4)
        eta, kappa = demands_and_capacities(ilp, solution, 9)
        assert set(eta) == {Fraction(1, 12)}
        assert set(kappa.values()) == {Fraction(1, 12)}
        fc = flow_certificate_from_solution(ilp, solution, 9)
        assert verify_flow_certificate(g, ball_scale(g, 1), fc).valid

    def test_uniform_flows_edgeless(self) -> None:
        """Test the edgeless convention."""
        g = Graph(vertex_count=3)
        assert build_uniform_flows(g, ball_scale(g, 1)).solve().objective_value == 0

    def test_fixed_capacity_flows(self) -> None:
        """Test per-vertex demands under fixed uniform capacities."""
        g = grid(3, 3)
        kappa = dict.fromkeys(g.edges, Fraction(1, 12))
        ilp = build_fixed_capacity_flows(g, ball_scale(g, 1), kappa)
        solution = ilp.solve()
        assert solution.objective_value == Fraction(11, 12)
        assert demands_and_capacities(ilp, solution, 9)[1] == kappa

    def test_fixed_capacity_rejects_bad_edges(self, square: Graph) -> None:
        """Test capacities must sit on edges and be nonnegative."""
        sc = ball_scale(square, 1)
        with pytest.raises(ValueError, match="non-edge"):
            build_fixed_capacity_flows(square, sc, {(0, 3): Fraction(1)})
        with pytest.raises(ValueError, match="Negative"):
            build_fixed_capacity_flows(square, sc, {(0, 1): Fraction(-1)})

    def test_uniform_demand_between_bounds(self) -> None:
        """Test a shared demand with free capacities sits between the other optima."""
        g = grid(3, 3)
        value = build_uniform_demand_flows(g, ball_scale(g, 1)).solve().objective_value
        assert value is not None
        assert Fraction(3, 4) <= value <= Fraction(12, 13)

    def test_single_column(self, cube: Graph) -> None:
        """Test the single-column LP gives the isoperimetric number of a ball."""
        ilp = build_single_column(cube, ball(cube, 0, 1))
        assert ilp.solve().objective_value == Fraction(3, 2)
        assert ilp.problem_kind is ProblemKind.SINGLE_COLUMN

    def test_single_column_rejects_empty(self, cube: Graph) -> None:
        """Test an empty set is rejected."""
        with pytest.raises(ValueError, match="nonempty"):
            build_single_column(cube, [])


class TestIsoperimetricProblems:
    """Tests for the isoperimetric LP and its covering dual."""

    def test_isoperimetric(self, square: Graph) -> None:
        """Test the subset formulation reaches the same optimum."""
        dual_sc = ball_scale(square, 1)
        family = enumerate_subsets(square, dual_sc)
        ilp = build_isoperimetric(square, dual_sc, family)
        solution = ilp.solve()
        assert solution.objective_value == Fraction(2, 3)
        eta, kappa = demands_and_capacities(ilp, solution, 4)
        assert sum(eta) == Fraction(2, 3)
        assert sum(kappa.values()) <= 1

    def test_covering_dual(self, square: Graph) -> None:
        """Test the covering dual yields a flat partition of equal value."""
        dual_sc = ball_scale(square, 1)
        family = enumerate_subsets(square, dual_sc)
        ilp = build_isoperimetric_dual(square, dual_sc, family)
        solution = ilp.solve()
        assert solution.objective_value == Fraction(2, 3)
        pf = flat_partition_from_solution(ilp, solution, square, dual_sc)
        assert pf.flat
        assert verify_partition_family(square, dual_sc, pf).valid

    def test_covering_dual_cap(self, square: Graph) -> None:
        """Test large families need explicit permission."""
        dual_sc = ball_scale(square, 1)
        family = enumerate_subsets(square, dual_sc)
        with pytest.raises(EnumerationCapError, match="allow exponential"):
            build_isoperimetric_dual(square, dual_sc, family, cap=2)
        assert build_isoperimetric_dual(
            square, dual_sc, family, allow_exponential=True, cap=2
        ).subsets == family.subsets
