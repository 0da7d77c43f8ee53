"""
Tests for the K(c, e, k, l, p, q) and R(x, y, g, d) parametrizations.
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modules.based_ring import verify_based_ring
from modules.errors import ConstraintViolation, NoSolution
from modules import rank4_families
from modules.rank4_families import (
    Box,
    KParams,
    RParams,
    build_K,
    enumerate_R,
    k1_params,
    k1_ring,
    k2_params,
    k2_ring,
    k_constraints_ok,
    k_to_r,
    normalize_family,
    r_candidates,
    r_equation_residual,
    r_is_valid,
    r_to_k,
    solutions_for_xy,
    structural_predicates,
)

SMALL_BOX = Box(xmax=2, ymax=2, gmax=3, dmax=12)


class TestConstraints:
    def test_table1_parameters(self):
        report = k_constraints_ok(2, 4, 2, 1, 0, 2)
        assert report.ok
        assert report.violations() == []

    def test_violation_detail(self):
        report = k_constraints_ok(2, 4, 2, 1, 0, 3)
        assert not report
        assert any(v.startswith("kl + lc") for v in report.violations())

    def test_negative_values_reported(self):
        report = k_constraints_ok(1, -1, 1, 0, 0, 0)
        assert "e < 0" in report.violations()

    def test_build_rejects_invalid(self):
        with pytest.raises(ConstraintViolation):
            build_K(KParams(1, 1, 1, 1, 1, 1))

    @given(st.integers(min_value=0, max_value=40))
    def test_k1_family_is_always_a_based_ring(self, e):
        assert k_constraints_ok(*k1_params(e).as_tuple())
        assert verify_based_ring(k1_ring(e)).passed

    @given(st.integers(min_value=0, max_value=40))
    def test_k2_family_is_always_a_based_ring(self, c):
        assert k_constraints_ok(*k2_params(c).as_tuple())
        assert verify_based_ring(k2_ring(c)).passed


class TestCoordinates:
    def test_r_to_k_table1(self):
        assert r_to_k(RParams(1, 2, 1, 0)) == KParams(2, 4, 2, 1, 0, 2)

    def test_k_to_r_table1(self):
        assert k_to_r(KParams(2, 4, 2, 1, 0, 2)) == RParams(1, 2, 1, 0)

    @pytest.mark.parametrize("e", [0, 2, 3, 6, 9])
    def test_k1_coordinates(self, e):
        assert k_to_r(k1_params(e)) == RParams(0, 1, 1, -e)
        assert r_to_k(RParams(0, 1, 1, -e)) == k1_params(e)

    @pytest.mark.parametrize("c", [0, 1, 2, 5])
    def test_k2_coordinates(self, c):
        assert k_to_r(k2_params(c)) == RParams(-1, 0, -1, -2 * c)
        assert r_to_k(RParams(-1, 0, -1, -2 * c)) == k2_params(c)

    def test_parity_failure(self):
        with pytest.raises(ConstraintViolation, match="odd"):
            r_to_k(RParams(1, 1, 0, 2))

    def test_equation_failure(self):
        assert r_equation_residual(RParams(1, 2, 1, 2)) != 0
        with pytest.raises(ConstraintViolation):
            r_to_k(RParams(1, 2, 1, 2))

    def test_k_equals_l_equals_zero_has_no_coordinates(self):
        # q(q - e) = 1 and c^2 - p^2 = 2 have no integer solution, so only invalid K reach here
        with pytest.raises((ConstraintViolation, NoSolution)):
            k_to_r(KParams(1, 0, 0, 0, 0, 1))

    def test_degenerate_split_candidates(self):
        assert r_candidates(KParams(1, 0, 0, 0, 0, 1)) == [
            (0, 1, 0), (0, -1, 0), (1, 0, 0), (-1, 0, 0),
        ]
        assert r_candidates(KParams(2, 4, 2, 1, 0, 2)) == [(1, 2, 1)]

    @pytest.mark.parametrize("d", range(-10, 11))
    def test_degenerate_splits_miss_the_r_equation(self, d):
        # g = 0 leaves dxy - x^2 - 1, which is -1 or -2 on every degenerate split
        for x, y, g in r_candidates(KParams(1, 0, 0, 0, 0, 1)):
            assert r_equation_residual(RParams(x, y, g, d)) != 0

    def test_degenerate_split_tries_every_candidate(self, monkeypatch):
        monkeypatch.setattr(rank4_families, "k_constraints_ok", lambda *args: True)
        with pytest.raises(NoSolution) as info:
            k_to_r(KParams(1, 0, 0, 0, 0, 1))
        for split in ("(0, 1, 0)", "(0, -1, 0)", "(1, 0, 0)", "(-1, 0, 0)"):
            assert split in str(info.value)

    def test_normalize_family(self):
        assert normalize_family(k1_params(6)) == ("k1", 6)
        assert normalize_family(k2_params(2)) == ("k2", 2)
        assert normalize_family(KParams(2, 4, 2, 1, 0, 2)) is None


class TestEnumeration:
    def test_every_quadruple_is_valid_and_round_trips(self):
        for params in enumerate_R(SMALL_BOX):
            assert r_is_valid(params)
            assert k_to_r(r_to_k(params)) == params
            assert structural_predicates(params).ok

    def test_contains_both_families_and_table1(self):
        found = set(enumerate_R(SMALL_BOX))
        assert RParams(0, 1, 1, -3) in found
        assert RParams(-1, 0, -1, -4) in found
        assert RParams(1, 2, 1, 0) in found

    def test_lexicographic_order(self):
        found = enumerate_R(SMALL_BOX)
        assert [p.as_tuple() for p in found] == sorted(p.as_tuple() for p in found)

    def test_worker_count_does_not_change_result(self):
        assert enumerate_R(SMALL_BOX, workers=1) == enumerate_R(SMALL_BOX, workers=2)

    def test_solutions_for_xy(self):
        found = solutions_for_xy(1, 2, gmax=2, dmax=5, require_nonnegative=True)
        assert RParams(1, 2, 1, 0) in found
        assert all(r_equation_residual(p) == 0 for p in found)

    def test_structural_predicates_flags(self):
        report = structural_predicates(RParams(1, 1, 0, 2))
        assert not report.x_plus_y_odd
        assert not report.g_nonzero
        assert not report.ok
