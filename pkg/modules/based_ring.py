"""
Based Ring Module
Fusion-ring data model: axiom verification, multiplication matrices, Frobenius-Perron
dimensions, formal codegrees and isomorphism testing
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from sympy import divisors

from config.settings import RANK4_DUAL
from modules.errors import FuscatError, ShapeMismatch
from modules.exact_arith import (
    CycloElem,
    IntPoly,
    QuadVal,
    char_poly,
    exact_sum,
    factor_with_known_double_root,
    perron_root,
    quadratic_roots,
    real_roots,
    sort_descending,
)

logger = logging.getLogger(__name__)

Tensor = Tuple[Tuple[Tuple[int, ...], ...], ...]


# ============= Data model =============

@dataclass(frozen=True)
class FusionRing:
    """
    Based ring with basis b_0 = 1, b_1, ..., b_{rank-1}.

    N[i][j][k] is the multiplicity of b_k in b_i * b_j and dual[i] is the index of b_i*.
    Construction only checks shapes; the axioms are checked by verify_based_ring.
    """

    rank: int
    dual: Tuple[int, ...]
    N: Tensor
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        rank = int(self.rank)
        if rank < 1:
            raise ShapeMismatch(f"rank must be positive, got {rank}")
        try:
            tensor = np.asarray(self.N, dtype=object)
        except ValueError as e:
            raise ShapeMismatch(f"ragged structure constants: {e}") from e
        if tensor.shape != (rank, rank, rank):
            raise ShapeMismatch(f"expected a {rank}x{rank}x{rank} tensor, got shape {tensor.shape}")
        dual = tuple(int(v) for v in self.dual)
        if sorted(dual) != list(range(rank)):
            raise ShapeMismatch(f"dual {list(dual)} is not a permutation of 0..{rank - 1}")
        labels = tuple(str(v) for v in self.labels) or tuple(str(i) for i in range(rank))
        if len(labels) != rank:
            raise ShapeMismatch(f"{len(labels)} labels for rank {rank}")
        frozen = tuple(tuple(tuple(int(v) for v in row) for row in plane) for plane in tensor.tolist())
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "dual", dual)
        object.__setattr__(self, "N", frozen)
        object.__setattr__(self, "labels", labels)

    @property
    def tensor(self) -> np.ndarray:
        return np.array(self.N, dtype=np.int64)

    @property
    def self_dual(self) -> Tuple[int, ...]:
        """Indices of the self-dual basis elements."""
        return tuple(i for i in range(self.rank) if self.dual[i] == i)

    @classmethod
    def from_table(
        cls,
        labels: Sequence[str],
        products: Mapping[Tuple[str, str], Mapping[str, int]],
        dual: Optional[Sequence[int]] = None,
    ) -> "FusionRing":
        """
        Build a ring from a multiplication table of label sums.

        Args:
            labels: Basis labels, unit first
            products: (left, right) -> {label: multiplicity}; products with the unit may be omitted
            dual: Duality permutation; read off the unit coefficients when omitted

        Returns:
            FusionRing
        """
        labels = list(labels)
        index = {label: i for i, label in enumerate(labels)}
        rank = len(labels)
        N = np.zeros((rank, rank, rank), dtype=np.int64)
        for i in range(rank):
            N[0, i, i] = 1
            N[i, 0, i] = 1
        for (left, right), terms in products.items():
            i, j = index[left], index[right]
            N[i, j, :] = 0
            for label, multiplicity in terms.items():
                N[i, j, index[label]] = multiplicity
        if dual is None:
            dual = []
            for i in range(rank):
                partners = [j for j in range(rank) if N[i, j, 0]]
                if len(partners) != 1:
                    raise ShapeMismatch(f"{labels[i]} has {len(partners)} candidate duals")
                dual.append(partners[0])
        return cls(rank, tuple(dual), N.tolist(), tuple(labels))

    def to_dict(self) -> Dict[str, object]:
        return {
            "rank": self.rank,
            "dual": list(self.dual),
            "N": [[list(row) for row in plane] for plane in self.N],
            "labels": list(self.labels),
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, object]) -> "FusionRing":
        for key in ("rank", "dual", "N"):
            if key not in data:
                raise ShapeMismatch(f"missing key '{key}'")
        return cls(int(data["rank"]), tuple(data["dual"]), data["N"], tuple(data.get("labels") or ()))

    def __str__(self) -> str:
        return f"FusionRing(rank={self.rank}, dual={list(self.dual)})"


# ============= Axioms =============

@dataclass(frozen=True)
class AxiomCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    """Per-axiom results; `extended` holds checks that are reported but never gate."""

    mandatory: Tuple[AxiomCheck, ...]
    extended: Tuple[AxiomCheck, ...] = ()

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.mandatory)

    def failed(self) -> List[str]:
        return [check.name for check in self.mandatory if not check.passed]

    def summary(self) -> Tuple[bool, str]:
        """
        Summarize the report.

        Returns:
            Tuple of (passed, message)
        """
        if self.passed:
            return True, "✅ all based-ring axioms hold"
        details = [f"❌ {check.name}: {check.detail}" for check in self.mandatory if not check.passed]
        return False, "\n".join(details)

    def to_dict(self) -> Dict[str, object]:
        return {
            "passed": self.passed,
            "axioms": {check.name: {"passed": check.passed, "detail": check.detail} for check in self.mandatory},
            "extended": {check.name: {"passed": check.passed, "detail": check.detail} for check in self.extended},
        }


def _first_offender(mask: np.ndarray) -> str:
    bad = np.argwhere(mask)
    return "" if len(bad) == 0 else f"first violation at {tuple(int(v) for v in bad[0])}"


def verify_based_ring(r: FusionRing) -> VerificationReport:
    """
    Check nonnegativity, unit, duality and associativity, plus the symmetry
    N_ij^k = N_{j*i*}^{k*} as an extended axiom.

    Args:
        r: Ring to check

    Returns:
        VerificationReport
    """
    T = r.tensor
    rank = r.rank
    dual = np.array(r.dual)
    eye = np.eye(rank, dtype=np.int64)
    checks = []

    negative = T < 0
    checks.append(AxiomCheck("nonnegativity", not negative.any(), _first_offender(negative)))

    unit_bad = (T[0] != eye) | (T[:, 0, :] != eye)
    checks.append(AxiomCheck("unit", not unit_bad.any(), _first_offender(unit_bad)))

    involution = bool(dual[0] == 0 and np.array_equal(dual[dual], np.arange(rank)))
    expected_unit_coeff = (np.arange(rank)[:, None] == dual[None, :]).astype(np.int64)
    duality_bad = T[:, :, 0] != expected_unit_coeff
    detail = _first_offender(duality_bad) if involution else f"dual {list(r.dual)} is not an involution fixing 0"
    checks.append(AxiomCheck("duality", involution and not duality_bad.any(), detail))

    left = np.einsum("ijm,mkl->ijkl", T, T)
    right = np.einsum("jkm,iml->ijkl", T, T)
    assoc_bad = left != right
    checks.append(AxiomCheck("associativity", not assoc_bad.any(), _first_offender(assoc_bad)))

    # N_ij^k versus N_{j*i*}^{k*}
    mirrored = T[np.ix_(dual, dual, dual)].transpose(1, 0, 2)
    symmetry_bad = T != mirrored
    extended = (AxiomCheck("dual_symmetry", not symmetry_bad.any(), _first_offender(symmetry_bad)),)

    report = VerificationReport(tuple(checks), extended)
    logger.debug("verified %s: %s", r, "pass" if report.passed else report.failed())
    return report


# ============= Matrices and dimensions =============

def mult_matrices(r: FusionRing) -> List[np.ndarray]:
    """Left multiplication matrices, (M_i)[k][j] = N[i][j][k]."""
    return [matrix.copy() for matrix in r.tensor.transpose(0, 2, 1)]


@dataclass(frozen=True)
class FPDimensions:
    dims: Tuple[QuadVal, ...]
    dim: QuadVal


def fpdim(r: FusionRing) -> FPDimensions:
    """
    Frobenius-Perron dimension of each basis element and dim = sum of squares.

    The Perron root of M_i is the largest real root of its characteristic polynomial; other
    factors may have any degree.

    Raises:
        EigenvalueDegreeTooHigh: a Perron root has degree > 2 over Q
    """
    dims = [perron_root(char_poly(matrix)) for matrix in mult_matrices(r)]
    total = exact_sum(d * d for d in dims)
    return FPDimensions(tuple(dims), total)


def fpdim_is_homomorphism(r: FusionRing, dims: Sequence[QuadVal]) -> bool:
    """FPdim(b_i) * FPdim(b_j) == sum_k N_ij^k FPdim(b_k) for all i, j."""
    for i in range(r.rank):
        for j in range(r.rank):
            product = dims[i] * dims[j]
            expansion = exact_sum(dims[k] * r.N[i][j][k] for k in range(r.rank))
            if product != expansion:
                return False
    return True


# ============= Formal codegrees =============

@dataclass(frozen=True)
class CodegreeSet:
    """Formal codegrees f_1 >= f_2, ... and the polynomial they are the roots of."""

    values: Tuple[QuadVal, ...]
    source_poly: IntPoly
    double_root: Optional[int] = None

    def reciprocal_sum(self) -> QuadVal:
        return exact_sum(1 / f for f in self.values)

    def to_dict(self) -> Dict[str, object]:
        return {
            "values": [f.to_dict() for f in self.values],
            "display": [str(f) for f in self.values],
            "source_poly": str(self.source_poly),
            "double_root": self.double_root,
        }


def casimir_matrix(r: FusionRing) -> np.ndarray:
    """A = sum_i M_i M_{i*}."""
    matrices = mult_matrices(r)
    return sum(matrices[i] @ matrices[r.dual[i]] for i in range(r.rank))


def rank4_casimir_matrix(r: FusionRing) -> np.ndarray:
    """A = 1 + M_Y^2 + 2 M_X M_Z in the basis (1, X, Y, Z) with X* = Z."""
    _, m_x, m_y, m_z = mult_matrices(r)
    return np.eye(4, dtype=np.int64) + m_y @ m_y + 2 * (m_x @ m_z)


def _integer_double_root(poly: IntPoly) -> Optional[int]:
    constant = abs(poly.coefficients[0]) if poly.coefficients else 0
    if constant == 0:
        return None
    derivative = poly.derivative()
    for candidate in divisors(constant):
        if poly(candidate) == 0 and derivative(candidate) == 0:
            return int(candidate)
    return None


def formal_codegrees(r: FusionRing) -> CodegreeSet:
    """
    Eigenvalues of A = sum_i M_i M_{i*}, with multiplicity.

    For rank-4 rings in the (1, X, Y, Z) convention the matrix is also built as
    1 + M_Y^2 + 2 M_X M_Z and the two constructions must agree. A positive integer double
    root, when present, is split off exactly; otherwise the polynomial is factored over Q.
    """
    A = casimir_matrix(r)
    if r.rank == 4 and r.dual == RANK4_DUAL:
        if not np.array_equal(A, rank4_casimir_matrix(r)):
            raise FuscatError("1 + M_Y^2 + 2 M_X M_Z disagrees with sum_i M_i M_i*")
    poly = char_poly(A)
    gamma = _integer_double_root(poly) if poly.degree == 4 else None
    if gamma is not None:
        alpha, beta = factor_with_known_double_root(poly, gamma)
        values = [QuadVal(gamma), QuadVal(gamma), *quadratic_roots(alpha, beta)]
        logger.debug("P_A = (t - %d)^2 (t^2 - %dt + %d)", gamma, alpha, beta)
    else:
        values = real_roots(poly)
        if len(values) != poly.degree:
            raise FuscatError(f"{poly} has non-real roots")
    return CodegreeSet(tuple(sort_descending(values)), poly, gamma)


# ============= Isomorphism =============

def is_isomorphic(r1: FusionRing, r2: FusionRing) -> Optional[Tuple[int, ...]]:
    """
    Search for a basis permutation sigma fixing 0, commuting with duality, with
    N2[sigma i][sigma j][sigma k] = N1[i][j][k].

    Returns:
        sigma as a tuple (sigma[i] is the image of b_i), or None
    """
    if r1.rank != r2.rank:
        return None
    T1, T2 = r1.tensor, r2.tensor
    for tail in itertools.permutations(range(1, r1.rank)):
        sigma = (0,) + tail
        if any(sigma[r1.dual[i]] != r2.dual[sigma[i]] for i in range(r1.rank)):
            continue
        if np.array_equal(T2[np.ix_(sigma, sigma, sigma)], T1):
            return sigma
    return None


# ============= Oracle rings =============

def cyclic_group_ring(n: int) -> FusionRing:
    """Group ring of Z/n with basis g^0, ..., g^(n-1)."""
    N = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            N[i, j, (i + j) % n] = 1
    dual = tuple((-i) % n for i in range(n))
    return FusionRing(n, dual, N.tolist(), tuple(f"g{i}" for i in range(n)))


def a4_character_table() -> Tuple[List[List[CycloElem]], List[int], List[str]]:
    """
    Character table of A4 over classes e, (12)(34), (123), (132).

    Returns:
        Tuple of (characters, class_sizes, labels)
    """
    one, zero = CycloElem.from_rational(1, 3), CycloElem.from_rational(0, 3)
    omega, omega2 = CycloElem.root(3, 1), CycloElem.root(3, 2)
    characters = [
        [one, one, one, one],
        [one, one, omega, omega2],
        [one, one, omega2, omega],
        [CycloElem.from_rational(3, 3), CycloElem.from_rational(-1, 3), zero, zero],
    ]
    return characters, [1, 3, 4, 4], ["1", "ρω", "ρω²", "ρ3"]


def ring_from_character_table(
    characters: Sequence[Sequence[CycloElem]],
    class_sizes: Sequence[int],
    labels: Optional[Sequence[str]] = None,
) -> FusionRing:
    """
    Representation ring from an exact character table.

    N_ij^k = (1/|G|) sum_g |class g| chi_i(g) chi_j(g) conj(chi_k(g)); the dual of chi_i is its
    complex conjugate.
    """
    rank = len(characters)
    order = sum(class_sizes)
    N = [[[0] * rank for _ in range(rank)] for _ in range(rank)]
    for i, j, k in itertools.product(range(rank), repeat=3):
        total = CycloElem.from_rational(0)
        for g, size in enumerate(class_sizes):
            total = total + characters[i][g] * characters[j][g] * characters[k][g].conj() * size
        value = total.rational_value() / order
        if value.denominator != 1:
            raise FuscatError(f"non-integral multiplicity {value} at ({i}, {j}, {k})")
        N[i][j][k] = int(value)
    dual = []
    for i in range(rank):
        conjugate = [chi.conj() for chi in characters[i]]
        dual.append(next(j for j in range(rank) if all(a == b for a, b in zip(characters[j], conjugate))))
    return FusionRing(rank, tuple(dual), N, tuple(labels) if labels else ())


# ============= Summary =============

def ring_summary(r: FusionRing) -> Dict[str, object]:
    """Rank, duality pattern, FP dimensions, global dimension and formal codegrees."""
    dims = fpdim(r)
    codegrees = formal_codegrees(r)
    return {
        "rank": r.rank,
        "labels": list(r.labels),
        "dual": list(r.dual),
        "self_dual": [r.labels[i] for i in r.self_dual],
        "fpdims": {label: str(d) for label, d in zip(r.labels, dims.dims)},
        "dim": str(dims.dim),
        "codegrees": [str(f) for f in codegrees.values],
        "codegree_reciprocal_sum": str(codegrees.reciprocal_sum()),
    }
