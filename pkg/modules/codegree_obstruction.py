"""
Codegree Obstruction Module
Pseudo-unitarity gates on formal codegrees, the double-root factorization of P_A(t) and the
reduction of R(x, y, g, d) rings to the two surviving families
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import sympy
from sympy import Matrix, Rational, Symbol

from config.messages import MESSAGES
from config.settings import (
    GAMMA8_DET_COEFFS,
    GAMMA8_DET_TARGET,
    GAMMA8_SCAN_RANGE,
)
from modules.based_ring import CodegreeSet, rank4_casimir_matrix
from modules.exact_arith import (
    IntPoly,
    QuadVal,
    Sign,
    char_poly,
    exact_sum,
    factor_with_known_double_root,
    is_perfect_square,
    quad_sign,
    quadratic_roots,
    sort_descending,
)
from modules.parallel import sharded_map
from modules.rank4_families import Box, KParams, RParams, build_K, enumerate_R, normalize_family, r_to_k

logger = logging.getLogger(__name__)


# ============= Double-root factorization =============

@dataclass(frozen=True)
class QuarticFactorization:
    """P_A(t) = (t - gamma)^2 (t^2 - alpha t + beta)."""

    gamma: int
    alpha: int
    beta: int
    quadratic_roots: Tuple[QuadVal, QuadVal]
    poly: IntPoly

    @property
    def splits(self) -> bool:
        return is_perfect_square(self.alpha * self.alpha - 4 * self.beta)

    def codegrees(self) -> CodegreeSet:
        values = sort_descending([QuadVal(self.gamma), QuadVal(self.gamma), *self.quadratic_roots])
        return CodegreeSet(tuple(values), self.poly, self.gamma)

    def to_dict(self) -> Dict[str, object]:
        return {
            "gamma": self.gamma,
            "alpha": self.alpha,
            "beta": self.beta,
            "quadratic_roots": [r.to_dict() for r in self.quadratic_roots],
            "poly": str(self.poly),
        }


def gamma_of(params: RParams) -> int:
    return 2 * params.x * params.x + params.y * params.y + 2


def gamma_double_root_check(params: RParams) -> QuarticFactorization:
    """
    Factor the characteristic polynomial of A = 1 + M_Y^2 + 2 M_X M_Z around gamma = 2x^2 + y^2 + 2.

    Raises:
        ConstraintViolation: params is not a valid quadruple
        NotADoubleRoot: gamma is not a double root
    """
    ring = build_K(r_to_k(params))
    poly = char_poly(rank4_casimir_matrix(ring))
    gamma = gamma_of(params)
    alpha, beta = factor_with_known_double_root(poly, gamma)
    return QuarticFactorization(gamma, alpha, beta, quadratic_roots(alpha, beta), poly)


# ============= Pseudo-unitarity gates =============

@dataclass(frozen=True)
class GateVerdict:
    """
    positive: every f_i > 0
    reciprocal_sum: sum 1/f_i, which must equal 1
    square_sum, square_bound: sum 1/f_i^2 must not exceed (1 + 1/f_1)/2
    """

    positive: bool
    reciprocal_sum: QuadVal
    square_sum: QuadVal
    square_bound: QuadVal

    @property
    def reciprocal_ok(self) -> bool:
        return self.reciprocal_sum == 1

    @property
    def slack(self) -> QuadVal:
        return self.square_bound - self.square_sum

    @property
    def square_ok(self) -> bool:
        return quad_sign(self.slack) is not Sign.NEGATIVE

    @property
    def passed(self) -> bool:
        return self.positive and self.reciprocal_ok and self.square_ok

    def to_dict(self) -> Dict[str, object]:
        return {
            "passed": self.passed,
            "positive": self.positive,
            "reciprocal_sum": self.reciprocal_sum.to_dict(),
            "reciprocal_ok": self.reciprocal_ok,
            "square_sum": self.square_sum.to_dict(),
            "square_bound": self.square_bound.to_dict(),
            "square_ok": self.square_ok,
            "slack": self.slack.to_dict(),
        }


def ostrik_gates(codegrees: Union[CodegreeSet, Sequence[QuadVal]]) -> GateVerdict:
    """
    Exact pseudo-unitarity checks on formal codegrees f_1 >= f_2, f_3, f_4.

    Args:
        codegrees: CodegreeSet or any sequence of QuadVal

    Returns:
        GateVerdict with exact sums and slack
    """
    values = codegrees.values if isinstance(codegrees, CodegreeSet) else codegrees
    values = sort_descending(values)
    positive = all(quad_sign(f) is Sign.POSITIVE for f in values)
    if not positive:
        zero = QuadVal()
        return GateVerdict(False, zero, zero, zero)
    reciprocal_sum = exact_sum(1 / f for f in values)
    square_sum = exact_sum(1 / (f * f) for f in values)
    square_bound = (1 + 1 / values[0]) * Fraction(1, 2)
    return GateVerdict(True, reciprocal_sum, square_sum, square_bound)


# ============= gamma bounds =============

@dataclass(frozen=True)
class GammaBoundVerdict:
    gamma: int
    lower_ok: bool
    upper_ok: bool
    beta_precondition: Optional[bool] = None
    reciprocal_identity: Optional[bool] = None
    square_sum_formula: Optional[Fraction] = None

    @property
    def passed(self) -> bool:
        return self.lower_ok and self.upper_ok

    def to_dict(self) -> Dict[str, object]:
        return {
            "gamma": self.gamma,
            "passed": self.passed,
            "lower_ok": self.lower_ok,
            "upper_ok": self.upper_ok,
            "beta_precondition": self.beta_precondition,
            "reciprocal_identity": self.reciprocal_identity,
            "square_sum_formula": None if self.square_sum_formula is None else str(self.square_sum_formula),
        }


def gamma_bound(gamma: int, alpha: Optional[int] = None, beta: Optional[int] = None) -> GammaBoundVerdict:
    """
    Decide 2 < gamma < 8 for (t - gamma)^2 (t^2 - alpha t + beta) with beta >= gamma^2.

    Upper end: with f_1 > gamma and 2/beta <= 2/gamma^2 the square-sum gate becomes
    1 + 4/gamma^2 - 4/gamma < (1 + 1/gamma)/2. When alpha and beta are supplied the
    intermediate identities -alpha/beta = 2/gamma - 1 and
    sum 1/f_i^2 = 1 + 6/gamma^2 - 4/gamma - 2/beta are evaluated too.
    """
    g = Fraction(gamma)
    lower_ok = gamma > 2
    upper_ok = gamma > 0 and 1 + 4 / (g * g) - 4 / g < (1 + 1 / g) / 2
    if alpha is None or beta is None or gamma == 0 or beta == 0:
        return GammaBoundVerdict(gamma, lower_ok, upper_ok)
    reciprocal_identity = Fraction(-alpha, beta) == 2 / g - 1
    square_sum = 1 + 6 / (g * g) - 4 / g - Fraction(2, beta)
    return GammaBoundVerdict(gamma, lower_ok, upper_ok, beta >= gamma * gamma, reciprocal_identity, square_sum)


# ============= Integer codegrees =============

def _unit_fraction_tuples(parts: int, remainder: Fraction, minimum: int) -> Iterator[Tuple[int, ...]]:
    """Nondecreasing tuples of `parts` integers >= minimum whose reciprocals sum to remainder."""
    if remainder <= 0:
        return
    if parts == 1:
        if remainder.numerator == 1 and remainder.denominator >= minimum:
            yield (remainder.denominator,)
        return
    start = max(minimum, math.floor(1 / remainder) + 1)
    stop = math.floor(parts / remainder)
    for f in range(start, stop + 1):
        for rest in _unit_fraction_tuples(parts - 1, remainder - Fraction(1, f), f):
            yield (f,) + rest


@lru_cache(maxsize=None)
def _repeated_quadruples() -> frozenset:
    return frozenset(
        tuple(reversed(ascending))
        for ascending in _unit_fraction_tuples(4, Fraction(1), 1)
        if len(set(ascending)) < 4
    )


def integer_codegree_tuples() -> set:
    """Nonincreasing positive integer quadruples with a repeated entry and sum 1/f_i = 1."""
    return set(_repeated_quadruples())


# ============= gamma = 8 =============

@dataclass(frozen=True)
class Gamma8Case:
    x: int
    y: int
    d_of_g: str
    det_poly: Tuple[Fraction, ...]
    nonzero_integer_solutions: Tuple[int, ...]
    scan_hits: Tuple[int, ...]

    @property
    def excluded(self) -> bool:
        return not self.nonzero_integer_solutions and not self.scan_hits

    def to_dict(self) -> Dict[str, object]:
        return {
            "x": self.x,
            "y": self.y,
            "d": self.d_of_g,
            "det_A": _poly_text(self.det_poly),
            "nonzero_integer_solutions": list(self.nonzero_integer_solutions),
            "scan_hits": list(self.scan_hits),
            "excluded": self.excluded,
        }


@dataclass(frozen=True)
class Gamma8Verdict:
    cases: Tuple[Gamma8Case, ...]
    target: int
    matches_closed_form: bool

    @property
    def passed(self) -> bool:
        return self.matches_closed_form and all(case.excluded for case in self.cases)

    def to_dict(self) -> Dict[str, object]:
        return {
            "passed": self.passed,
            "target": self.target,
            "matches_closed_form": self.matches_closed_form,
            "cases": [case.to_dict() for case in self.cases],
        }


def _poly_text(coeffs: Sequence[Fraction]) -> str:
    g = Symbol("g")
    return str(sum(Rational(str(c)) * g ** i for i, c in enumerate(coeffs)))


def symbolic_casimir(x: int, y: int, g, d) -> Matrix:
    """A = 1 + M_Y^2 + 2 M_X M_Z of R(x, y, g, d) with symbolic g and d."""
    half = Rational(1, 2)
    c = (y * g + x * d + y) * half
    e = 2 * x * g - y * d + 2 * x
    k, l = g * y, g * x
    p = (y * g + x * d - y) * half
    q = x * g + x
    m_x = Matrix([[0, 0, 0, 1], [1, p, q, p], [0, l, k, q], [0, c, l, p]])
    m_y = Matrix([[0, 0, 1, 0], [0, q, k, l], [1, k, e, k], [0, l, k, q]])
    m_z = Matrix([[0, 1, 0, 0], [0, p, l, c], [0, q, k, l], [1, p, q, p]])
    return sympy.eye(4) + m_y * m_y + 2 * m_x * m_z


def gamma8_exclusion() -> Gamma8Verdict:
    """
    gamma = 8 forces (x, y) = (+-1, +-2) and integer codegrees (8, 8, 4, 2), so det A = 512.

    For each sign choice d is solved from the R equation, det A is expanded as a polynomial
    in g, and det A = 512 is shown to have no nonzero integer solution (symbolically and by
    a scan over |g| <= GAMMA8_SCAN_RANGE).
    """
    g = Symbol("g")
    cases = []
    closed_form = False
    for x, y in ((1, 2), (1, -2), (-1, 2), (-1, -2)):
        d = sympy.solve(sympy.Eq(Symbol("d") * x * y, g * (2 * x * x - y * y) + x * x + 1), Symbol("d"))[0]
        det = sympy.Poly(sympy.expand(symbolic_casimir(x, y, g, d).det()), g)
        coeffs = tuple(Fraction(str(v)) for v in reversed(det.all_coeffs()))
        difference = det - GAMMA8_DET_TARGET
        solutions = tuple(
            sorted(int(r) for r in sympy.roots(difference, g) if r.is_integer and r != 0)
        )
        scan_hits = tuple(
            v for v in range(-GAMMA8_SCAN_RANGE, GAMMA8_SCAN_RANGE + 1)
            if v != 0 and det.eval(v) == GAMMA8_DET_TARGET
        )
        if (x, y) == (1, 2):
            closed_form = coeffs == GAMMA8_DET_COEFFS
        cases.append(Gamma8Case(x, y, str(d), coeffs, solutions, scan_hits))
        logger.debug("gamma = 8, (x, y) = (%d, %d): det A = %s", x, y, det.as_expr())
    return Gamma8Verdict(tuple(cases), GAMMA8_DET_TARGET, closed_form)


# ============= Classification =============

@dataclass(frozen=True)
class CandidateDecision:
    params: RParams
    kparams: KParams
    factorization: QuarticFactorization
    gates: GateVerdict
    branch: str
    gamma_sq_divides_beta: bool
    gamma_verdict: Optional[GammaBoundVerdict]
    rejected_by: Optional[str]
    family: Optional[Tuple[str, int]]

    @property
    def survives(self) -> bool:
        return self.rejected_by is None

    @property
    def falsification(self) -> bool:
        return self.survives and self.family is None

    def to_row(self) -> Dict[str, object]:
        x, y, g, d = self.params.as_tuple()
        return {
            "x": x,
            "y": y,
            "g": g,
            "d": d,
            "K": str(self.kparams),
            "gamma": self.factorization.gamma,
            "alpha": self.factorization.alpha,
            "beta": self.factorization.beta,
            "branch": self.branch,
            "gamma_sq_divides_beta": self.gamma_sq_divides_beta,
            "codegrees": " ".join(str(f) for f in self.factorization.codegrees().values),
            "gates_passed": self.gates.passed,
            "rejected_by": self.rejected_by or "",
            "family": "" if self.family is None else f"{self.family[0]}({self.family[1]})",
            "verdict": self.verdict,
        }

    @property
    def verdict(self) -> str:
        if self.falsification:
            return MESSAGES["verdict_falsification"]
        return MESSAGES["verdict_survivor"] if self.survives else MESSAGES["verdict_rejected"]

    def to_dict(self) -> Dict[str, object]:
        row = self.to_row()
        row["factorization"] = self.factorization.to_dict()
        row["gates"] = self.gates.to_dict()
        row["gamma_bound"] = None if self.gamma_verdict is None else self.gamma_verdict.to_dict()
        return row


def decide_candidate(params: RParams) -> CandidateDecision:
    """Run the full codegree pipeline on one quadruple and record where it stops."""
    kparams = r_to_k(params)
    factorization = gamma_double_root_check(params)
    gamma, alpha, beta = factorization.gamma, factorization.alpha, factorization.beta
    gates = ostrik_gates(factorization.codegrees())
    gamma_verdict = None
    rejected_by = None
    if factorization.splits:
        branch = "split"
        values = factorization.codegrees().values
        as_ints = tuple(int(f.a) for f in values) if all(f.is_rational and f.a.denominator == 1 for f in values) else None
        if as_ints not in _repeated_quadruples():
            rejected_by = "integer codegrees outside the repeated-value list"
        elif gamma == 8:
            rejected_by = "gamma = 8 excluded by det A"
        elif gamma == 12:
            rejected_by = "gamma = 12"
    else:
        branch = "irreducible"
        if beta < gamma * gamma:
            rejected_by = "beta < gamma^2"
        else:
            gamma_verdict = gamma_bound(gamma, alpha, beta)
            if not gamma_verdict.passed:
                rejected_by = f"gamma = {gamma} outside 2 < gamma < 8"
    if rejected_by is None and not gates.passed:
        rejected_by = "pseudo-unitarity gates"
    family = normalize_family(kparams)
    decision = CandidateDecision(
        params=params,
        kparams=kparams,
        factorization=factorization,
        gates=gates,
        branch=branch,
        gamma_sq_divides_beta=beta % (gamma * gamma) == 0,
        gamma_verdict=gamma_verdict,
        rejected_by=rejected_by,
        family=family,
    )
    logger.debug("%s -> %s", params, rejected_by or "survives")
    return decision


@dataclass(frozen=True)
class ClassificationReport:
    box: Box
    decisions: Tuple[CandidateDecision, ...]
    gamma8: Gamma8Verdict

    @property
    def survivors(self) -> List[CandidateDecision]:
        return [d for d in self.decisions if d.survives]

    @property
    def falsifications(self) -> List[CandidateDecision]:
        return [d for d in self.decisions if d.falsification]

    @property
    def rejected_family_members(self) -> List[CandidateDecision]:
        return [d for d in self.decisions if d.family is not None and not d.survives]

    @property
    def matches_claim(self) -> bool:
        return not self.falsifications and not self.rejected_family_members and self.gamma8.passed

    def survivor_families(self) -> List[Tuple[str, int]]:
        return sorted({d.family for d in self.survivors if d.family is not None})

    def to_rows(self) -> List[Dict[str, object]]:
        return [d.to_row() for d in self.decisions]

    def to_dict(self) -> Dict[str, object]:
        return {
            "box": self.box.to_dict(),
            "candidates": len(self.decisions),
            "survivors": [f"{name}({value})" for name, value in self.survivor_families()],
            "falsifications": [str(d.params) for d in self.falsifications],
            "rejected_family_members": [str(d.params) for d in self.rejected_family_members],
            "matches_claim": self.matches_claim,
            "gamma8": self.gamma8.to_dict(),
            "assumptions": [MESSAGES["assumption_cited_gates"], MESSAGES["assumption_beta_bound"]],
            "decisions": [d.to_dict() for d in self.decisions],
        }


def classify_rank4(box: Optional[Box] = None, workers: Optional[int] = 1) -> ClassificationReport:
    """
    Enumerate R(x, y, g, d) in the box and push every quadruple through the codegree pipeline.

    Args:
        box: Enumeration bounds
        workers: Worker count for both the enumeration and the per-candidate decisions

    Returns:
        ClassificationReport, decisions in lexicographic order of (x, y, g, d)
    """
    box = box or Box()
    candidates = enumerate_R(box, workers)
    decisions = sharded_map(decide_candidate, candidates, workers)
    report = ClassificationReport(box, tuple(decisions), gamma8_exclusion())
    logger.info(
        "classified %d candidates: %d survivors, %d falsifications",
        len(decisions), len(report.survivors), len(report.falsifications),
    )
    return report