"""Unit tests for certificates, their verifiers, partitions and max-flow lifting."""

from __future__ import annotations

from fractions import Fraction

import pytest

from propa.errors import CertificateMismatchError, InfeasibleDemandError
from propa.flows.certificates import (
    FlowCertificate,
    MeasureFamily,
    PartitionFamily,
    certificate_from_dict,
    edge_key,
    l1_distance,
    net_supplies,
    parse_edge_key,
)
from propa.flows.maxflow import (
    check_weighted_isoperimetric,
    lift_and_project,
    max_flow_feasible,
)
from propa.flows.partitions import (
    flatten_partition,
    measures_from_partition,
    partition_from_measures,
)
from propa.flows.verify import (
    verify_flow_certificate,
    verify_measure_family,
    verify_partition_family,
    weak_duality_check,
)
from propa.graphs.base import Graph
from propa.graphs.generators import cycle, hypercube, path
from propa.graphs.metric import ball_scale, dual_scale
from propa.invariants.cube import cube_dual_certificate, cube_primal_certificate
from propa.invariants.formulas import cube_epsilon_formula

HALF = Fraction(1, 2)


class TestCertificateHelpers:
    """Tests for edge keys, distances and supplies."""

    def test_edge_keys(self) -> None:
        """Test edge keys are canonical."""
        assert edge_key((1, 3)) == "1-3"
        assert parse_edge_key("3-1") == (1, 3)
        with pytest.raises(ValueError):
            parse_edge_key("1")

    def test_l1_distance(self) -> None:
        """Test L1 distance over the union of supports."""
        assert l1_distance({0: HALF, 1: HALF}, {1: HALF, 2: HALF}) == 1

    def test_net_supplies(self) -> None:
        """Test flow along u -> v supplies v."""
        assert net_supplies({(0, 1): HALF}) == {0: -HALF, 1: HALF}

    def test_unknown_kind(self) -> None:
        """Test dispatch rejects unknown kinds."""
        with pytest.raises(ValueError, match="Unknown certificate kind"):
            certificate_from_dict({"kind": "other"})

    def test_json_forms_parse_back(self) -> None:
        """Test every certificate kind survives its JSON form."""
        mf = cube_primal_certificate(2, 1)
        fc = cube_dual_certificate(2, 1)
        pf = partition_from_measures(mf)
        assert certificate_from_dict(mf.to_dict()) == mf
        assert certificate_from_dict(fc.to_dict()) == fc
        assert certificate_from_dict(pf.to_dict()) == pf


class TestVerifyMeasures:
    """Tests for measure family verification."""

    def test_uniform_measures(self, square: Graph) -> None:
        """Test uniform measures on the 2-cube balls."""
        mf = MeasureFamily.uniform(square, ball_scale(square, 1))
        report = verify_measure_family(square, ball_scale(square, 1), mf)
        assert mf.epsilon == Fraction(2, 3)
        assert report.valid
        assert report.value == Fraction(2, 3)

    def test_support_and_mass_violations(self, square: Graph) -> None:
        """Test mass outside S_i and wrong totals are reported."""
        sc = ball_scale(square, 1)
        xi = list(MeasureFamily.uniform(square, sc).xi)
        xi[0] = {3: Fraction(1)}
        xi[1] = {1: HALF}
        report = verify_measure_family(square, sc, MeasureFamily(tuple(xi), Fraction(2)))
        assert not report.valid
        assert any("lies outside S_0" in v for v in report.violations)
        assert any("xi_1 has total mass 1/2" in v for v in report.violations)

    def test_claimed_epsilon_too_small(self, square: Graph) -> None:
        """Test edge variations above the claim are reported."""
        sc = ball_scale(square, 1)
        mf = MeasureFamily(MeasureFamily.uniform(square, sc).xi, HALF)
        report = verify_measure_family(square, sc, mf)
        assert not report.valid
        assert "edge 0-1 has variation 2/3 > 1/2" in report.violations


CUBE_CASES = [
    pytest.param(n, s, marks=[pytest.mark.slow] if n >= 6 else [], id=f"Q{n}-s{s}")
    for n in range(2, 9)
    for s in range(n)
]


class TestVerifyFlows:
    """Tests for pseudo-flow certificate verification."""

    @pytest.mark.parametrize(("n", "s"), CUBE_CASES)
    def test_cube_certificates(self, n: int, s: int) -> None:
        """Test the layered cube flows verify and reach the closed form."""
        g = hypercube(n)
        fc = cube_dual_certificate(n, s)
        report = verify_flow_certificate(g, dual_scale(ball_scale(g, s)), fc)
        assert report.valid, report.violations[:5]
        assert fc.objective == cube_epsilon_formula(n, s)
        assert cube_primal_certificate(n, s).epsilon == fc.objective

    def test_cube_certificate_verifies(self, cube: Graph) -> None:
        """Test the 3-cube certificate passes exact verification."""
        fc = cube_dual_certificate(3, 1)
        report = verify_flow_certificate(
            cube, dual_scale(ball_scale(cube, 1)), fc, claimed_objective=Fraction(1)
        )
        assert report.valid, report.violations
        assert fc.eta[0] == Fraction(1, 8)

    def test_capacity_and_supply_violations(self, square: Graph) -> None:
        """Test over-capacity flows and unmet demand name focus and edge."""
        fc = FlowCertificate(
            eta=(Fraction(1),) * 4,
            kappa=dict.fromkeys(square.edges, Fraction(1, 4)),
            flows={0: {(0, 1): Fraction(1)}},
        )
        report = verify_flow_certificate(square, ball_scale(square, 1), fc)
        assert not report.valid
        assert any(v.startswith("focus 0, edge 0-1") for v in report.violations)
        assert any("below demand 1" in v for v in report.violations)

    def test_total_capacity(self, square: Graph) -> None:
        """Test capacities may not exceed total 1."""
        fc = FlowCertificate(eta=(Fraction(0),) * 4, kappa=dict.fromkeys(square.edges, HALF))
        report = verify_flow_certificate(square, ball_scale(square, 1), fc)
        assert "total capacity 2 exceeds 1" in report.violations

    def test_claimed_objective(self, square: Graph) -> None:
        """Test a wrong claimed objective is reported."""
        fc = cube_dual_certificate(2, 1)
        report = verify_flow_certificate(
            square, ball_scale(square, 1), fc, claimed_objective=Fraction(1)
        )
        assert not report.valid


class TestWeakDuality:
    """Tests for weak duality."""

    def test_cube_pair(self, cube: Graph) -> None:
        """Test the cube certificates satisfy weak duality with equality."""
        mf = cube_primal_certificate(3, 1)
        fc = cube_dual_certificate(3, 1)
        assert weak_duality_check(mf, fc, cube, ball_scale(cube, 1))
        assert fc.objective == mf.epsilon

    def test_mismatched_sizes(self) -> None:
        """Test certificates of different graphs are rejected."""
        with pytest.raises(CertificateMismatchError):
            weak_duality_check(cube_primal_certificate(2, 1), cube_dual_certificate(3, 1))


class TestPartitions:
    """Tests for transposition and flattening."""

    def test_transpose_round_trip(self, square: Graph) -> None:
        """Test measures and partitions transpose into each other."""
        mf = cube_primal_certificate(2, 1)
        pf = partition_from_measures(mf)
        assert pf.flat
        assert verify_partition_family(square, dual_scale(ball_scale(square, 1)), pf).valid
        assert measures_from_partition(pf, 4) == mf

    def test_flatten_keeps_variation(self, square: Graph) -> None:
        """Test level slicing keeps every edge variation."""
        pf = PartitionFamily(
            functions=(
                (0, {0: Fraction(2, 3), 1: Fraction(1, 3)}),
                (3, {0: Fraction(1, 3), 1: Fraction(2, 3), 2: Fraction(1), 3: Fraction(1)}),
            ),
            flat=False,
            variation=Fraction(2, 3),
        )
        flat = flatten_partition(pf)
        assert flat.flat
        assert len(flat.functions) == 5
        for edge in square.edges:
            assert flat.edge_variation(edge) == pf.edge_variation(edge)

    def test_flatten_rejects_negative(self) -> None:
        """Test negative functions cannot be flattened."""
        pf = PartitionFamily(functions=((0, {0: Fraction(-1)}),), flat=False, variation=Fraction(0))
        with pytest.raises(ValueError, match="negative"):
            flatten_partition(pf)

    def test_partition_violations(self, square: Graph) -> None:
        """Test unit sums and supports are checked."""
        pf = PartitionFamily(functions=((0, {0: HALF, 3: HALF}),), flat=True, variation=Fraction(1))
        report = verify_partition_family(square, ball_scale(square, 1), pf)
        assert not report.valid
        assert "functions sum to 1/2 at vertex 0" in report.violations
        assert "function 0 leaves S_0 at 3" in report.violations


class TestMaxFlow:
    """Tests for max-flow feasibility and lifting."""

    def test_feasible_with_internal_supply(self) -> None:
        """Test a negative demand feeds a positive one."""
        g = path(3)
        kappa = dict.fromkeys(g.edges, HALF)
        result = max_flow_feasible(g, kappa, {0, 1, 2}, [HALF, Fraction(0), -HALF])
        assert result.feasible
        assert result.flow == {(0, 1): -HALF, (1, 2): -HALF}

    def test_witness_set(self) -> None:
        """Test the unreachable side of a minimum cut is returned."""
        g = path(3)
        kappa = dict.fromkeys(g.edges, HALF)
        result = max_flow_feasible(g, kappa, {0, 1, 2}, [Fraction(1), Fraction(0), -HALF])
        assert not result.feasible
        assert result.witness == frozenset({0, 1, 2})

    def test_outside_vertices_supply_freely(self) -> None:
        """Test vertices outside the demand set act as sources."""
        g = path(3)
        kappa = {(0, 1): HALF}
        eta = [HALF, Fraction(0), Fraction(0)]
        result = max_flow_feasible(g, kappa, {0}, eta)
        assert result.flow == {(0, 1): -HALF}
        failed = max_flow_feasible(g, kappa, {0}, [Fraction(1), Fraction(0), Fraction(0)])
        assert failed.witness == frozenset({0})
        assert failed.to_dict()["witness"] == [0]

    def test_bad_inputs(self) -> None:
        """Test wrong demand lengths and negative capacities raise."""
        g = path(2)
        with pytest.raises(ValueError):
            max_flow_feasible(g, {}, {0}, [Fraction(1)])
        with pytest.raises(ValueError, match="Negative"):
            max_flow_feasible(g, {(0, 1): Fraction(-1)}, {0}, [Fraction(1), Fraction(0)])

    def test_lift_cube_demands(self, cube: Graph) -> None:
        """Test lifting the cube demands yields a verified certificate."""
        given = cube_dual_certificate(3, 1)
        dual_sc = dual_scale(ball_scale(cube, 1))
        lifted = lift_and_project(cube, dual_sc, given.eta, given.kappa)
        assert verify_flow_certificate(cube, dual_sc, lifted).valid
        assert lifted.objective == 1

    def test_lift_reports_violated_set(self) -> None:
        """Test infeasible demands raise with focus and witness."""
        g = cycle(4)
        dual_sc = ball_scale(g, 1)
        kappa = dict.fromkeys(g.edges, Fraction(1, 4))
        with pytest.raises(InfeasibleDemandError) as info:
            lift_and_project(g, dual_sc, [Fraction(1)] * 4, kappa)
        assert info.value.focus == 0
        assert info.value.witness
        eta_total = len(info.value.witness)
        assert eta_total > sum(kappa[e] for e in g.boundary(info.value.witness))

    def test_check_weighted_isoperimetric(self, square: Graph) -> None:
        """Test the per-set inequality check."""
        kappa = dict.fromkeys(square.edges, Fraction(1, 4))
        sc = ball_scale(square, 1)
        assert check_weighted_isoperimetric(square, sc, [Fraction(1, 6)] * 4, kappa).feasible
        assert not check_weighted_isoperimetric(square, sc, [Fraction(1, 5)] * 4, kappa).feasible
