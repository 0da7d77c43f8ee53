"""
Tests for the based-ring model: axioms, FP dimensions, formal codegrees and isomorphism.
"""

import numpy as np
import pytest

from modules.based_ring import (
    FusionRing,
    a4_character_table,
    casimir_matrix,
    cyclic_group_ring,
    formal_codegrees,
    fpdim,
    fpdim_is_homomorphism,
    is_isomorphic,
    mult_matrices,
    rank4_casimir_matrix,
    ring_from_character_table,
    ring_summary,
    verify_based_ring,
)
from modules.data_manager import load_ring_file
from modules.errors import EigenvalueDegreeTooHigh, ShapeMismatch
from modules.exact_arith import QuadVal
from modules.rank4_families import k1_ring, k2_ring


class TestFusionRing:
    def test_fixture_matches_family_construction(self, table1_ring, table1_built):
        assert table1_ring.N == table1_built.N
        assert table1_ring.dual == (0, 3, 2, 1)
        assert table1_ring.self_dual == (0, 2)

    def test_wrong_tensor_shape(self):
        with pytest.raises(ShapeMismatch):
            FusionRing(4, (0, 3, 2, 1), np.zeros((3, 3, 3), dtype=int).tolist())

    def test_dual_must_be_a_permutation(self):
        with pytest.raises(ShapeMismatch):
            FusionRing(2, (0, 0), np.zeros((2, 2, 2), dtype=int).tolist())

    def test_label_count(self):
        with pytest.raises(ShapeMismatch):
            FusionRing(2, (0, 1), cyclic_group_ring(2).N, ("1",))

    def test_from_table_infers_duals(self, rep_a4_ring):
        products = {
            ("X", "X"): {"Z": 1},
            ("X", "Y"): {"Y": 1},
            ("X", "Z"): {"1": 1},
            ("Y", "X"): {"Y": 1},
            ("Y", "Y"): {"1": 1, "X": 1, "Y": 2, "Z": 1},
            ("Y", "Z"): {"Y": 1},
            ("Z", "X"): {"1": 1},
            ("Z", "Y"): {"Y": 1},
            ("Z", "Z"): {"X": 1},
        }
        ring = FusionRing.from_table(["1", "X", "Y", "Z"], products)
        assert ring.dual == (0, 3, 2, 1)
        assert ring.N == rep_a4_ring.N

    def test_dict_round_trip(self, table1_ring):
        assert FusionRing.from_dict(table1_ring.to_dict()) == table1_ring

    def test_from_dict_missing_key(self):
        with pytest.raises(ShapeMismatch):
            FusionRing.from_dict({"rank": 1, "N": [[[1]]]})


class TestAxioms:
    def test_table1_is_a_based_ring(self, table1_ring):
        report = verify_based_ring(table1_ring)
        assert report.passed
        assert report.failed() == []
        assert report.summary()[0]
        assert all(check.passed for check in report.extended)

    def test_broken_associativity(self, table1_ring):
        data = table1_ring.to_dict()
        data["N"][1][1] = [0, 0, 1, 1]
        report = verify_based_ring(FusionRing.from_dict(data))
        assert not report.passed
        assert "associativity" in report.failed()
        passed, message = report.summary()
        assert not passed
        assert "associativity" in message

    def test_negative_multiplicity(self):
        data = cyclic_group_ring(2).to_dict()
        data["N"][1][1] = [1, -1]
        report = verify_based_ring(FusionRing.from_dict(data))
        assert "nonnegativity" in report.failed()

    def test_dual_must_be_an_involution_fixing_the_unit(self):
        ring = cyclic_group_ring(3)
        bad = FusionRing(3, (0, 1, 2), ring.N, ring.labels)
        assert "duality" in verify_based_ring(bad).failed()

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_cyclic_group_rings(self, n):
        ring = cyclic_group_ring(n)
        assert verify_based_ring(ring).passed
        assert formal_codegrees(ring).values == tuple(QuadVal(n) for _ in range(n))

    # t^n - 1 carries cyclotomic factors of degree > 2 below the Perron root 1 for n = 5, 7, 8
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7, 8])
    def test_cyclic_group_dimensions(self, n):
        dims = fpdim(cyclic_group_ring(n))
        assert all(d == 1 for d in dims.dims)
        assert dims.dim == n

    def test_cubic_perron_root_is_out_of_scope(self):
        # 1, a, b with a^2 = 1 + b, ab = a + b, b^2 = 1 + a + b: FPdim(a) = 2cos(pi/7)
        N = [
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[0, 1, 0], [1, 0, 1], [0, 1, 1]],
            [[0, 0, 1], [0, 1, 1], [1, 1, 1]],
        ]
        with pytest.raises(EigenvalueDegreeTooHigh):
            fpdim(FusionRing(3, (0, 1, 2), N, ("1", "a", "b")))


class TestDimensions:
    def test_mult_matrices_convention(self, table1_ring):
        m_x = mult_matrices(table1_ring)[1]
        # X * Y = 2X + 2Y + Z
        assert list(m_x[:, 2]) == [0, 2, 2, 1]

    def test_rep_a4_dimensions(self, rep_a4_ring):
        dims = fpdim(rep_a4_ring)
        assert dims.dims == (QuadVal(1), QuadVal(1), QuadVal(3), QuadVal(1))
        assert dims.dim == 12
        assert fpdim_is_homomorphism(rep_a4_ring, dims.dims)

    def test_table1_global_dimension(self, table1_ring):
        dims = fpdim(table1_ring)
        assert dims.dim == QuadVal(36, 20, 3)
        assert fpdim_is_homomorphism(table1_ring, dims.dims)


class TestCodegrees:
    def test_rank4_casimir_agrees(self, table1_ring):
        assert np.array_equal(casimir_matrix(table1_ring), rank4_casimir_matrix(table1_ring))

    def test_table1_codegrees(self, table1_ring):
        codegrees = formal_codegrees(table1_ring)
        assert codegrees.values == (QuadVal(36, 20, 3), QuadVal(8), QuadVal(8), QuadVal(36, -20, 3))
        assert codegrees.double_root == 8
        assert codegrees.reciprocal_sum() == 1

    def test_rep_a4_codegrees(self, rep_a4_ring):
        codegrees = formal_codegrees(rep_a4_ring)
        assert codegrees.values == (QuadVal(12), QuadVal(4), QuadVal(3), QuadVal(3))
        assert codegrees.double_root == 3

    def test_to_dict(self, table1_ring):
        data = formal_codegrees(table1_ring).to_dict()
        assert data["display"] == ["36+20√3", "8", "8", "36-20√3"]
        assert data["double_root"] == 8


class TestFamilyProperties:
    @pytest.mark.parametrize("e", range(0, 51))
    def test_k1_family(self, e):
        ring = k1_ring(e)
        assert verify_based_ring(ring).passed
        assert fpdim_is_homomorphism(ring, fpdim(ring).dims)
        codegrees = formal_codegrees(ring)
        assert codegrees.values.count(QuadVal(3)) >= 2
        assert codegrees.reciprocal_sum() == 1

    @pytest.mark.parametrize("c", range(0, 51))
    def test_k2_family(self, c):
        ring = k2_ring(c)
        assert verify_based_ring(ring).passed
        assert fpdim_is_homomorphism(ring, fpdim(ring).dims)
        codegrees = formal_codegrees(ring)
        assert codegrees.values.count(QuadVal(4)) >= 2
        assert codegrees.reciprocal_sum() == 1


class TestIsomorphism:
    def test_character_table_ring_is_k1_of_two(self, rep_a4_ring):
        characters, sizes, labels = a4_character_table()
        rep_a4 = ring_from_character_table(characters, sizes, labels)
        assert verify_based_ring(rep_a4).passed
        assert rep_a4.dual == (0, 2, 1, 3)
        sigma = is_isomorphic(rep_a4_ring, rep_a4)
        assert sigma is not None
        assert sigma[0] == 0 and sigma[2] == 3

    def test_identity_isomorphism(self, table1_ring, table1_built):
        assert is_isomorphic(table1_ring, table1_built) == (0, 1, 2, 3)

    def test_non_isomorphic(self, table1_ring, rep_a4_ring):
        assert is_isomorphic(table1_ring, rep_a4_ring) is None
        assert is_isomorphic(table1_ring, cyclic_group_ring(3)) is None


def test_ring_summary(table1_ring):
    summary = ring_summary(table1_ring)
    assert summary["rank"] == 4
    assert summary["self_dual"] == ["1", "Y"]
    assert summary["dim"] == "36+20√3"
    assert summary["codegree_reciprocal_sum"] == "1"


def test_k1_ring_matches_shipped_file(data_dir):
    ring, error = load_ring_file(data_dir / "k1_e2.json")
    assert error is None
    assert ring.N == k1_ring(2).N
