"""
Tests for the roots-of-unity bounds, Galois orbit sums, orbit rewriting and the brute-force oracle.
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modules.cyclotomic_obstruction import (
    ObstructionQuery,
    bound_paired,
    bound_sqrt2,
    bound_sqrt_general,
    certificate_paired,
    certificate_sqrt2,
    certificate_sqrt_general,
    conjugate_house_bound,
    epsilon_of,
    input_orbit_terms,
    minroots_bruteforce,
    minroots_paired_bruteforce,
    multiset_totals,
    orbit_normalize,
    orbit_sums,
    orbits_dividing,
    paired_case,
)
from modules.errors import HypothesisViolation
from modules.exact_arith import QuadVal, euler_phi


class TestBounds:
    def test_sqrt_general(self):
        assert bound_sqrt_general(0, 1, 5) == 4
        assert bound_sqrt_general(3, -2, 3) == 4
        assert bound_sqrt_general(7, 0, 21) == 0

    @pytest.mark.parametrize("d", [0, 4, 12, -3])
    def test_sqrt_general_needs_squarefree_radicand(self, d):
        with pytest.raises(HypothesisViolation):
            bound_sqrt_general(0, 1, d)

    def test_sqrt2(self):
        assert bound_sqrt2(0, 1) == 2
        assert bound_sqrt2(1, -2) == 5

    @pytest.mark.parametrize("c, case", [(3, "three_mod_four_odd_t"), (15, "otherwise"), (21, "otherwise"),
                                         (87, "otherwise"), (231, "three_mod_four_odd_t")])
    def test_paired_case(self, c, case):
        assert paired_case(c) == case

    def test_paired_three_mod_four(self):
        # b*phi(3) + d*phi(3) + b + 2a
        assert bound_paired(ObstructionQuery(1, 1, 3, 1)) == 7
        assert bound_paired(ObstructionQuery(0, 8, 3, 0)) == 24

    def test_paired_otherwise(self):
        # b*phi(c) - 2b + 2a
        assert bound_paired(ObstructionQuery(0, 1, 15, 0)) == 6
        assert bound_paired(ObstructionQuery(8, 3, 93, 1)) == 3 * 60 - 6 + 16

    @pytest.mark.parametrize("c", [9, 6, 5, 2])
    def test_paired_hypotheses_on_c(self, c):
        with pytest.raises(HypothesisViolation):
            bound_paired(ObstructionQuery(0, 1, c, 0))

    def test_paired_needs_nonnegative_coefficients(self):
        with pytest.raises(HypothesisViolation):
            bound_paired(ObstructionQuery(0, 1, 3, -1))
        with pytest.raises(HypothesisViolation):
            bound_paired(ObstructionQuery(-1, 1, 3, 0))

    def test_query_prime_count(self):
        assert ObstructionQuery(0, 1, 93).t == 2
        assert ObstructionQuery(0, 1, 3).t == 1


class TestOrbits:
    def test_epsilon(self):
        assert [epsilon_of(c) for c in (5, 2, 3, 21, 93)] == [0, 1, 1, 0, 0]

    def test_twelfth_roots_over_sqrt3(self):
        report = orbit_sums(3, 12)
        assert [orbit.exponents for orbit in report.orbits] == [(1, 11), (5, 7)]
        assert [orbit.total for orbit in report.orbits] == [QuadVal.sqrt(3), -QuadVal.sqrt(3)]
        assert all(orbit.square_total == 1 for orbit in report.orbits)
        assert (report.epsilon, report.n, report.L) == (1, 12, 24)

    def test_fifth_roots_over_sqrt5(self):
        report = orbit_sums(5, 5)
        assert [orbit.exponents for orbit in report.orbits] == [(1, 4), (2, 3)]
        golden = QuadVal(Fraction(-1, 2), Fraction(1, 2), 5)
        assert report.orbits[0].total == golden
        assert report.orbits[0].square_total == golden.conj()
        assert report.orbits[1].total == golden.conj()

    @pytest.mark.parametrize("c, n, L", [(3, 12, 24), (7, 28, 168), (11, 44, 264)])
    def test_three_mod_four_gauss_tables(self, c, n, L):
        report = orbit_sums(c, 4 * c)
        assert (report.epsilon, report.n, report.L) == (1, n, L)
        assert len(report.orbits) == 2
        assert all(orbit.size == euler_phi(2 * c) for orbit in report.orbits)
        assert {orbit.total for orbit in report.orbits} == {QuadVal.sqrt(c), -QuadVal.sqrt(c)}

    def test_thirteenth_roots_over_sqrt13(self):
        report = orbit_sums(13, 13)
        assert (report.epsilon, report.n, report.L) == (0, 13, 156)
        residues = tuple(sorted(j * j % 13 for j in range(1, 7)))
        assert tuple(sorted(report.orbits[0].exponents)) == residues == (1, 3, 4, 9, 10, 12)
        half = QuadVal(Fraction(-1, 2), Fraction(1, 2), 13)
        assert [orbit.total for orbit in report.orbits] == [half, half.conj()]
        # 2 is a non-residue mod 13, so squaring swaps the two orbits
        assert [orbit.square_total for orbit in report.orbits] == [half.conj(), half]

    def test_full_orbit_when_sqrt_is_outside(self):
        report = orbit_sums(3, 8)
        assert len(report.orbits) == 1
        assert report.orbits[0].size == 4
        assert report.orbits[0].total == 0
        assert report.orbits[0].square_total == 0

    def test_orbits_partition_the_primitive_roots(self):
        report = orbit_sums(21, 84)
        exponents = sorted(j for orbit in report.orbits for j in orbit.exponents)
        assert exponents == [j for j in range(84) if math.gcd(j, 84) == 1]
        assert all(orbit.size == 12 for orbit in report.orbits)

    def test_rows(self):
        rows = orbit_sums(3, 12).to_rows()
        assert rows[0]["sum"] == "√3"
        assert rows[1]["exponents"] == "5 7"

    def test_hypotheses(self):
        with pytest.raises(HypothesisViolation):
            orbit_sums(12, 5)
        with pytest.raises(HypothesisViolation):
            orbit_sums(3, 0)

    def test_orbits_dividing(self):
        orbits = orbits_dividing(2, 8)
        assert sorted(orbit.order for orbit in orbits) == [1, 2, 4, 8, 8]


class TestNormalization:
    ORBITS = [(1, 0), (2, 1), (5, 1), (8, 1), (12, 1), (12, 5), (30, 1), (60, 1), (60, 7)]

    @pytest.mark.parametrize("track_squares", [False, True])
    def test_sums_are_preserved(self, track_squares):
        before = input_orbit_terms(self.ORBITS, 3)
        after = orbit_normalize(self.ORBITS, 3, track_squares=track_squares)
        total_before, squares_before = multiset_totals(before)
        total_after, squares_after = multiset_totals(after)
        assert total_after == total_before
        if track_squares:
            assert squares_after == squares_before
        assert sum(term.size for term in after) <= sum(term.size for term in before)

    def test_output_orders_divide_the_modulus(self):
        assert all(12 % term.order == 0 for term in orbit_normalize(self.ORBITS, 3))
        assert all(24 % term.order == 0 for term in orbit_normalize(self.ORBITS, 3, track_squares=True))

    def test_sixtieth_roots_collapse_to_twelfth(self):
        (term,) = orbit_normalize([(60, 1)], 3)
        assert term.order == 12
        assert term.exponents == (1, 11)

    @pytest.mark.parametrize("c, Y", [(7, 28), (11, 44), (13, 13), (5, 5)])
    @pytest.mark.parametrize("track_squares", [False, True])
    def test_gauss_tables_normalize(self, c, Y, track_squares):
        orbits = [(Y, 1), (3 * Y, 1), (5 * Y if c != 5 else 7 * Y, 1), (1, 0), (2, 1)]
        report = orbit_sums(c, Y)
        after = orbit_normalize(orbits, c, track_squares=track_squares)
        before = multiset_totals(input_orbit_terms(orbits, c))
        totals = multiset_totals(after)
        assert totals[0] == before[0]
        if track_squares:
            assert totals[1] == before[1]
        modulus = report.L if track_squares else 2 ** (report.epsilon + 1) * c
        assert all(modulus % term.order == 0 for term in after)
        assert sum(term.size for term in after) <= sum(term.size for term in input_orbit_terms(orbits, c))

    def test_zero_sum_orbits_are_dropped(self):
        assert orbit_normalize([(8, 1), (9, 1)], 3) == []

    @settings(max_examples=25, deadline=None)
    @given(st.lists(st.sampled_from([(1, 0), (2, 1), (3, 1), (4, 1), (5, 2), (6, 1), (7, 3),
                                     (10, 3), (12, 7), (15, 2), (20, 3), (24, 5), (35, 1)]),
                    max_size=5))
    def test_sums_preserved_for_random_multisets(self, orbits):
        before = multiset_totals(input_orbit_terms(orbits, 5))
        after = multiset_totals(orbit_normalize(orbits, 5, track_squares=True))
        assert after == before


class TestCertificates:
    def test_sqrt2(self):
        check = certificate_sqrt2()
        assert check.passed
        assert check.worst == -1
        assert check.modulus == 8

    @pytest.mark.parametrize("c", [2, 3, 5])
    def test_sqrt_general(self, c):
        check = certificate_sqrt_general(c)
        assert check.passed
        assert check.worst == -1

    def test_paired_c3(self):
        check = certificate_paired(3)
        assert check.passed
        assert check.worst == -1
        assert check.modulus == 24

    def test_certificate_hypotheses(self):
        with pytest.raises(HypothesisViolation):
            certificate_sqrt_general(1)
        with pytest.raises(HypothesisViolation):
            certificate_paired(5)


class TestBruteForce:
    def test_house_bound(self):
        assert conjugate_house_bound(QuadVal.sqrt(5)) == 3
        assert conjugate_house_bound(QuadVal(2)) == 2
        assert conjugate_house_bound(QuadVal(0)) == 0
        assert conjugate_house_bound(QuadVal(1, 1, 2), QuadVal(5)) == 5

    def test_sqrt2_needs_two(self):
        result = minroots_bruteforce(QuadVal.sqrt(2), max_order=8, max_count=4)
        assert result.found
        assert result.minimum == 2 == bound_sqrt2(0, 1)
        assert result.witness == ((8, 1), (8, 7))

    def test_sqrt5_needs_four(self):
        result = minroots_bruteforce(QuadVal.sqrt(5), max_order=40, max_count=4)
        assert result.minimum == 4 == bound_sqrt_general(0, 1, 5)

    def test_zero_needs_none(self):
        result = minroots_bruteforce(QuadVal(0), max_order=6, max_count=2)
        assert result.minimum == 0
        assert result.witness == ()

    def test_paired_cube_roots(self):
        result = minroots_paired_bruteforce(QuadVal(-1), QuadVal(-1), max_order=12, max_count=3)
        assert result.minimum == 2
        assert result.witness == ((3, 1), (3, 2))

    def test_paired_single_root(self):
        result = minroots_paired_bruteforce(QuadVal(-1), QuadVal(1), max_order=12, max_count=3)
        assert result.minimum == 1
        assert result.witness == ((2, 1),)

    def test_budget_exceeded(self):
        result = minroots_paired_bruteforce(QuadVal.sqrt(3), QuadVal(5), max_order=12, max_count=4)
        assert not result.found
        assert result.status == "exceeds_budget"
        assert result.search_start == 5

    def test_target_outside_the_field(self):
        result = minroots_bruteforce(QuadVal.sqrt(5), max_order=8, max_count=4)
        assert result.status == "impossible"

    def test_non_integral_target(self):
        assert minroots_bruteforce(QuadVal(Fraction(1, 2)), max_order=4, max_count=2).status == "impossible"

    @pytest.mark.parametrize("b", [1, 2])
    def test_sqrt3_meets_the_general_bound(self, b):
        result = minroots_bruteforce(QuadVal(0, b, 3), max_order=12, max_count=4)
        assert result.minimum == bound_sqrt_general(0, b, 3)


# ═══════════════════════════════════════════════════════════════════
# Brute force against the bounds over Q(zeta_24)
# ═══════════════════════════════════════════════════════════════════

SQRT2_GRID = [(a, b) for b in range(-3, 4) for a in range(-6, 7) if abs(a) + 2 * abs(b) <= 6]


class TestOracleAgainstBounds:
    def test_sqrt2_and_sqrt3_over_zeta24(self):
        assert minroots_bruteforce(QuadVal.sqrt(2), max_order=24, max_count=6).minimum == 2 == bound_sqrt2(0, 1)
        assert minroots_bruteforce(QuadVal.sqrt(3), max_order=24, max_count=6).minimum == 2 == bound_sqrt_general(0, 1, 3)

    @pytest.mark.parametrize("a, b", SQRT2_GRID)
    def test_sqrt2_bound_is_attained(self, a, b):
        result = minroots_bruteforce(QuadVal(a, b, 2), max_order=24, max_count=6)
        assert result.found
        assert result.minimum == bound_sqrt2(a, b)

    def test_grid_reaches_the_budget(self):
        assert max(bound_sqrt2(a, b) for a, b in SQRT2_GRID) == 6
        assert len(SQRT2_GRID) == 43
