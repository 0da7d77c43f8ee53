"""
Tests for the center data of K1(e) and K2(c), the twist identities and the feasibility scans.
"""

import math
from fractions import Fraction

import pytest

from modules.center_obstruction import (
    K1CenterData,
    k1_branchings,
    k1_delta,
    k1_dimension_data,
    k1_feasible,
    k1_twist_targets,
    k2_branchings,
    k2_d,
    k2_feasible,
    phi_ratio_bound,
    scan,
    twist_identity_checks,
)
from modules.errors import ConstraintViolation, HypothesisViolation
from modules.exact_arith import QuadVal


class TestK1Dimensions:
    def test_delta(self):
        assert k1_delta(0) == QuadVal.sqrt(3)
        assert k1_delta(2) == 3
        assert k1_delta(3) == QuadVal(Fraction(3, 2), Fraction(1, 2), 21)

    def test_delta_is_a_root_of_its_minimal_polynomial(self):
        for e in range(8):
            delta = k1_delta(e)
            assert delta * delta == e * delta + 3

    @pytest.mark.parametrize("e, status, k", [(0, "ok", 0), (2, "rational_delta", None), (3, "ok", 1),
                                              (4, "not_integral", None), (5, "not_integral", None),
                                              (6, "ok", 2)])
    def test_status(self, e, status, k):
        dims = k1_dimension_data(e)
        assert dims.status == status
        assert dims.k == k

    def test_rational_dimension_for_e2(self):
        assert k1_dimension_data(2).dim == 12


class TestK1Branchings:
    def test_counts(self):
        assert [len(k1_branchings(k)) for k in range(4)] == [1, 2, 3, 4]

    def test_squarefree_parts(self):
        assert [(b.c_sf, b.m) for b in (k1_branchings(k)[0] for k in range(7))] == [
            (3, 2), (21, 1), (3, 4), (93, 1), (39, 2), (237, 1), (21, 4)
        ]

    @pytest.mark.parametrize("k", [0, 1, 2, 3, 4])
    def test_decompositions_resum(self, k):
        for data in k1_branchings(k):
            assert data.clm_holds()
            assert all(data.decomposition_checks().values()), data.to_dict()

    def test_gamma_square_sum(self):
        assert [b.gamma_sq_sum for b in k1_branchings(2)] == [18, 22, 18]

    def test_squarefree_part_conditions_up_to_twenty(self):
        for k in range(21):
            branchings = k1_branchings(k)
            assert branchings
            for data in branchings:
                c = data.c_sf
                assert c % 3 == 0 and math.gcd(c, 10) == 1
                assert c * data.m ** 2 == 9 * k * k + 12
                assert all(data.decomposition_checks().values()), data.to_dict()

    def test_budget_identity(self):
        for k in range(8):
            for data in k1_branchings(k):
                for sign in (1, -1):
                    targets = k1_twist_targets(data, sign)
                    assert targets.budget == 12 + 6 * k * k + 8 * data.r * data.p
                    assert (targets.query.b, targets.query.d) == (k * data.m, (k - 2 * sign) * data.m)

    def test_negative_k(self):
        with pytest.raises(ConstraintViolation):
            k1_branchings(-1)


class TestTwistTargets:
    def test_targets_for_k1(self):
        data = K1CenterData(1, 0, 1)
        plus = k1_twist_targets(data, 1)
        assert plus.sum_target == QuadVal(0, -1, 21)
        assert plus.square_target == QuadVal.sqrt(21)
        assert plus.budget == 18
        assert (plus.query.a, plus.query.b, plus.query.c, plus.query.d) == (0, 1, 21, -1)
        minus = k1_twist_targets(data, -1)
        assert minus.query.d == 3
        assert minus.square_target == QuadVal(0, -3, 21)

    def test_bad_sign(self):
        with pytest.raises(ValueError):
            k1_twist_targets(K1CenterData(1, 0, 1), 0)


class TestPhiRatio:
    @pytest.mark.parametrize("c, reference", [(21, 21), (39, 33), (93, 33)])
    def test_holds(self, c, reference):
        check = phi_ratio_bound(c)
        assert check.reference == reference
        assert check.holds

    @pytest.mark.parametrize("c", [15, 9, 10, 35])
    def test_hypotheses(self, c):
        with pytest.raises(HypothesisViolation):
            phi_ratio_bound(c)

    def test_below_explicit_reference(self):
        with pytest.raises(HypothesisViolation):
            phi_ratio_bound(21, 33)


class TestK1Feasibility:
    def test_survivors_up_to_twenty(self):
        assert [e for e in range(21) if k1_feasible(e).feasible] == [0, 2, 3, 6]

    def test_cases(self):
        assert k1_feasible(2).case == "rational_delta"
        assert k1_feasible(4).case == "not_integral"
        assert k1_feasible(3).case == "c21"
        assert k1_feasible(6).case == "c3"
        assert k1_feasible(9).case == "c33"

    def test_e9_is_rejected_by_every_branching(self):
        verdict = k1_feasible(9)
        assert not verdict.feasible
        assert verdict.exact_values["route_rejects"]
        assert verdict.exact_values["c_sf"] == 93
        assert all(not item["survives"] for item in verdict.evidence)

    def test_c3_inequality_rejects_beyond_three(self):
        for k in range(4, 101):
            assert QuadVal(12 + 6 * k * k) < QuadVal(0, 5 * k - 4, 3 * k * k + 4), k
        assert QuadVal(12 + 6 * 9) >= QuadVal(0, 11, 31)

    def test_every_k_from_four_is_rejected(self):
        for k in range(4, 40):
            assert not k1_feasible(3 * k).feasible, k

    def test_e6_survives_on_the_bound(self):
        verdict = k1_feasible(6)
        assert verdict.exact_values["budget"] == 36
        assert [1, 1, "+"] in verdict.exact_values["surviving_branchings"]

    def test_detail_toggle(self):
        verdict = k1_feasible(3)
        assert "evidence" not in verdict.to_dict()
        assert len(verdict.to_dict(detail=True)["evidence"]) == 4
        assert verdict.to_dict()["assumptions"]


class TestK2:
    def test_d(self):
        assert k2_d(0) == 1
        assert k2_d(1) == QuadVal(1, 1, 2)

    def test_branchings(self):
        assert len(k2_branchings(0)) == 1
        found = k2_branchings(2)
        assert found
        for data in found:
            assert data.g + data.h == 2
            assert data.j + data.l + data.n + data.q == 4
            assert sorted([data.k, data.m, data.p, data.r]) == sorted([data.j, data.l, data.n, data.q])
            assert data.gamma_sq_sum >= 0

    def test_pair_sum_bound(self):
        for c in range(7):
            found = k2_branchings(c)
            assert found
            for data in found:
                assert data.pair_sum_bound == 4 + 3 * c * c
                assert data.pair_sum <= data.pair_sum_bound, data.to_dict()

    def test_survivors_up_to_six(self):
        assert [c for c in range(7) if k2_feasible(c).feasible] == [0, 1, 2]

    def test_cases(self):
        assert k2_feasible(0).case == "rational_d"
        one = k2_feasible(1)
        assert one.case == "theta_i_twice_square"
        assert one.exact_values["theta_i"]["survives"]
        assert k2_feasible(2).case == "theta_i_general"

    def test_c3_fails_both_twist_cases(self):
        values = k2_feasible(3).exact_values
        assert not values["theta_one"]["survives"]
        assert not values["theta_i"]["survives"]


class TestTwistIdentities:
    @pytest.mark.parametrize("e", [0, 2, 3, 6])
    def test_k1(self, e):
        report = twist_identity_checks("k1", e)
        assert report.passed, report.to_dict()
        assert report.twists["D"] == "ω"

    @pytest.mark.parametrize("c", [0, 1, 2])
    def test_k2(self, c):
        report = twist_identity_checks("k2", c)
        assert report.passed, report.to_dict()

    def test_non_integral_k(self):
        with pytest.raises(ConstraintViolation):
            twist_identity_checks("k1", 4)

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            twist_identity_checks("k3", 1)


class TestScan:
    def test_small_scans(self):
        assert scan("k1", 12).matches_claim
        report = scan("k2", 6)
        assert report.survivors == (0, 1, 2)
        assert len(report.to_rows()) == 7

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            scan("k3")
        with pytest.raises(ValueError):
            scan("k1", -1)

    @pytest.mark.slow
    @pytest.mark.parametrize("family", ["k1", "k2"])
    def test_default_range_matches_claim(self, family):
        assert scan(family).matches_claim

    @pytest.mark.slow
    def test_workers_do_not_change_the_report(self):
        assert scan("k1", 30, workers=1).to_dict(True) == scan("k1", 30, workers=2).to_dict(True)
