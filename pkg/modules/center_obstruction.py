"""
Center Obstruction Module
Drinfeld-center data for hypothetical categorifications of K1(e) and K2(c), the twist trace
identities, and the feasibility scans built on the roots-of-unity bounds
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Tuple

from sympy.utilities.iterables import multiset_permutations

from config.messages import MESSAGES
from config.settings import (
    DEFAULT_MAX_C,
    DEFAULT_MAX_E,
    EXPECTED_SURVIVORS,
    K1_TWIST_ORDER,
    K2_TWIST_ORDER,
)
from modules.cyclotomic_obstruction import (
    ObstructionQuery,
    bound_paired,
    bound_sqrt2,
    bound_sqrt_general,
)
from modules.errors import ConstraintViolation, HypothesisViolation
from modules.exact_arith import (
    CycloElem,
    QuadCycloField,
    QuadVal,
    euler_phi,
    is_squarefree,
    squarefree_part,
)
from modules.parallel import sharded_map

logger = logging.getLogger(__name__)

K1_ASSUMPTIONS = (
    "assumption_feasible_meaning",
    "assumption_nonnegative_multiplicities",
    "assumption_gamma_budget",
    "assumption_twist_sign",
    "assumption_cited_gates",
    "assumption_c93_routing",
    "assumption_minus_sign_gap",
    "assumption_e2_accepted",
)

K2_ASSUMPTIONS = (
    "assumption_feasible_meaning",
    "assumption_nonnegative_multiplicities",
    "assumption_cited_gates",
    "assumption_c0_accepted",
)


def _quad_json(value: QuadVal) -> Dict[str, object]:
    return {**value.to_dict(), "display": str(value)}


# ============= K1(e) =============

def k1_delta(e: int) -> QuadVal:
    """FPdim(Y) = (e + sqrt(e^2 + 12)) / 2."""
    return QuadVal(Fraction(e, 2), Fraction(1, 2), e * e + 12)


@dataclass(frozen=True)
class K1Dimensions:
    """
    Dimension skeleton of K1(e).

    status is 'rational_delta' for e = 2, 'not_integral' when 3 does not divide e (k = e/3 must
    be an integer once delta is irrational), otherwise 'ok'.
    """

    e: int
    delta: QuadVal
    dim: QuadVal
    k: Optional[int]
    status: str

    def to_dict(self) -> Dict[str, object]:
        return {
            "e": self.e,
            "k": self.k,
            "delta": _quad_json(self.delta),
            "dim": _quad_json(self.dim),
            "status": self.status,
        }


def k1_dimension_data(e: int) -> K1Dimensions:
    delta = k1_delta(e)
    dim = 6 + e * delta
    if e == 2:
        return K1Dimensions(e, delta, dim, None, "rational_delta")
    if e % 3:
        return K1Dimensions(e, delta, dim, None, "not_integral")
    return K1Dimensions(e, delta, dim, e // 3, "ok")


@dataclass(frozen=True)
class K1CenterData:
    """
    One branching of the center of a K1(3k) categorification: F(E) = X + rY, F(G) = X + pY
    with r + p = k, and the L_i summands of I(Y) carrying sum(gamma_i^2).
    """

    k: int
    r: int
    p: int

    @property
    def e(self) -> int:
        return 3 * self.k

    @property
    def alpha(self) -> int:
        return self.k

    @property
    def delta(self) -> QuadVal:
        return k1_delta(self.e)

    @property
    def dim(self) -> QuadVal:
        return 6 + 3 * self.k * self.delta

    @property
    def gamma_sq_sum(self) -> int:
        return 6 + 5 * self.k ** 2 - 2 * (self.r ** 2 + self.p ** 2)

    @property
    def radicand(self) -> int:
        return 9 * self.k ** 2 + 12

    @property
    def c_sf(self) -> int:
        return squarefree_part(self.radicand)[0]

    @property
    def m(self) -> int:
        """sqrt((9k^2 + 12) / c_sf)."""
        return squarefree_part(self.radicand)[1]

    @property
    def dims(self) -> Dict[str, QuadVal]:
        k, r, p, delta = self.k, self.r, self.p, self.delta
        return {
            "A": 1 + k * delta,
            "B": 2 + k * delta,
            "C": 2 + k * delta,
            "D": 2 + self.alpha * delta,
            "E": 1 + r * delta,
            "G": 1 + p * delta,
            "H": 1 + r * delta,
            "J": 1 + p * delta,
        }

    def clm_holds(self) -> bool:
        """3 | c_sf and gcd(c_sf, 10) = 1."""
        c = self.c_sf
        return c % 3 == 0 and c % 2 != 0 and c % 5 != 0

    def decomposition_checks(self) -> Dict[str, bool]:
        """Dimensions of I(1), I(X), I(Z), I(Y) re-summed against dim(C) * FPdim."""
        d = self.dims
        k, r, p = self.k, self.r, self.p
        i_y = (
            k * (d["A"] + d["B"] + d["C"] + d["D"])
            + r * (d["E"] + d["H"])
            + p * (d["G"] + d["J"])
            + self.gamma_sq_sum * self.delta
        )
        return {
            "I(1)": 1 + d["A"] + d["B"] + d["C"] == self.dim,
            "I(X)": d["B"] + d["D"] + d["E"] + d["G"] == self.dim,
            "I(Z)": d["C"] + d["D"] + d["H"] + d["J"] == self.dim,
            "I(Y)": i_y == self.dim * self.delta,
            "hom(F(I(Y)), Y)": 4 * k * k + 2 * r * r + 2 * p * p + self.gamma_sq_sum == 9 * k * k + 6,
        }

    def to_dict(self) -> Dict[str, object]:
        return {
            "k": self.k,
            "alpha": self.alpha,
            "r": self.r,
            "p": self.p,
            "gamma_sq_sum": self.gamma_sq_sum,
            "c_sf": self.c_sf,
            "m": self.m,
            "dims": {label: str(value) for label, value in self.dims.items()},
        }


def k1_branchings(k: int) -> List[K1CenterData]:
    """Every (r, p) with r + p = k, r, p >= 0 and sum(gamma_i^2) >= 0."""
    if k < 0:
        raise ConstraintViolation(f"k must be nonnegative, got {k}")
    branchings = [K1CenterData(k, r, k - r) for r in range(k + 1)]
    branchings = [b for b in branchings if b.gamma_sq_sum >= 0]
    for b in branchings:
        if not b.clm_holds():
            raise ConstraintViolation(f"squarefree part {b.c_sf} of 9k^2+12 breaks 3 | c, (c, 10) = 1")
    return branchings


@dataclass(frozen=True)
class TwistTargets:
    """
    Real targets for sum gamma_i^2 (theta_i + conj theta_i) and the same over squares, as
    -a - b*sqrt(c) and -a - d*sqrt(c), with the number of roots of unity available.
    """

    sum_target: QuadVal
    square_target: QuadVal
    budget: int
    query: ObstructionQuery
    sign: int

    def to_dict(self) -> Dict[str, object]:
        return {
            "sign": "+" if self.sign > 0 else "-",
            "sum_target": _quad_json(self.sum_target),
            "square_target": _quad_json(self.square_target),
            "budget": self.budget,
            "a": self.query.a,
            "b": self.query.b,
            "c": self.query.c,
            "d": self.query.d,
        }


def k1_twist_targets(data: K1CenterData, sign: int) -> TwistTargets:
    """
    Targets -k*sqrt(9k^2+12) - 4rp and (-k + 2*sign)*sqrt(9k^2+12) - 4rp; budget
    2 * sum(gamma_i^2) = 12 + 6k^2 + 8rp.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    k, a = data.k, 4 * data.r * data.p
    query = ObstructionQuery(a=a, b=k * data.m, c=data.c_sf, d=(k - 2 * sign) * data.m)
    return TwistTargets(
        sum_target=QuadVal(-a, -k, data.radicand),
        square_target=QuadVal(-a, -k + 2 * sign, data.radicand),
        budget=2 * data.gamma_sq_sum,
        query=query,
        sign=sign,
    )


@dataclass(frozen=True)
class BranchingEvidence:
    """Budget against the paired bound for one branching and one sign; required is None outside its hypotheses."""

    r: int
    p: int
    sign: int
    budget: int
    required: Optional[int]

    @property
    def survives(self) -> bool:
        return self.required is None or self.budget >= self.required

    def to_dict(self) -> Dict[str, object]:
        return {
            "r": self.r,
            "p": self.p,
            "sign": "+" if self.sign > 0 else "-",
            "budget": self.budget,
            "required": self.required,
            "survives": self.survives,
        }


@dataclass(frozen=True)
class PhiRatioCheck:
    c: int
    reference: int
    holds: bool

    def to_dict(self) -> Dict[str, object]:
        return {"c": self.c, "reference": self.reference, "holds": self.holds}


def phi_ratio_bound(c: int, reference: Optional[int] = None) -> PhiRatioCheck:
    """
    phi(c)/sqrt(c) >= phi(ref)/sqrt(ref), ref = 33 for c >= 33 and 21 for c >= 21, checked as
    phi(c)^2 * ref >= phi(ref)^2 * c.

    Raises:
        HypothesisViolation: c not an odd squarefree multiple of 3, or below the reference
    """
    if c % 2 == 0 or c % 3 or not is_squarefree(c):
        raise HypothesisViolation(f"c = {c} must be an odd squarefree multiple of 3")
    if reference is None:
        reference = 33 if c >= 33 else 21
    if reference not in (21, 33) or c < reference:
        raise HypothesisViolation(f"c = {c} is below the reference {reference}")
    holds = euler_phi(c) ** 2 * reference >= euler_phi(reference) ** 2 * c
    return PhiRatioCheck(c, reference, holds)


@dataclass(frozen=True)
class FeasibilityVerdict:
    family: str
    param: int
    feasible: bool
    case: str
    exact_values: Dict[str, object] = field(default_factory=dict)
    evidence: Tuple[Dict[str, object], ...] = ()
    assumptions: Tuple[str, ...] = ()

    def to_dict(self, detail: bool = False) -> Dict[str, object]:
        data = {
            "param": self.param,
            "verdict": MESSAGES["verdict_feasible"] if self.feasible else MESSAGES["verdict_infeasible"],
            "feasible": self.feasible,
            "case": self.case,
            "exact_values": self.exact_values,
            "assumptions": [MESSAGES[key] for key in self.assumptions],
        }
        if detail:
            data["evidence"] = list(self.evidence)
        return data

    def to_row(self) -> Dict[str, object]:
        return {
            "family": self.family,
            "param": self.param,
            "feasible": self.feasible,
            "case": self.case,
            "budget": self.exact_values.get("budget"),
            "required": self.exact_values.get("required"),
        }


def _k1_route(k: int, c_sf: int, m: int) -> Tuple[str, bool, Dict[str, object]]:
    """The closed-form inequality of the case split by the squarefree part; True means it rejects."""
    budget = 12 + 6 * k * k
    if c_sf == 3:
        rhs = QuadVal(0, 5 * k - 4, 3 * k * k + 4)
        return "c3", QuadVal(budget) < rhs, {"route_lhs": budget, "route_rhs": _quad_json(rhs)}
    if c_sf == 21:
        rhs = (euler_phi(21) - 2) * k * m
        return "c21", budget < rhs, {"route_lhs": budget, "route_rhs": rhs}
    ratio = phi_ratio_bound(c_sf, 33)
    # budget < (phi(33) - 2) k sqrt((9k^2 + 12) / 33), squared
    rejects = 33 * budget ** 2 < (euler_phi(33) - 2) ** 2 * k * k * (9 * k * k + 12)
    return "c33", rejects and ratio.holds, {"route_lhs": budget, "phi_ratio": ratio.to_dict()}


def k1_feasible(e: int) -> FeasibilityVerdict:
    """
    Decide whether the center obstruction rules K1(e) out.

    e = 2 is accepted outright; e not divisible by 3 is rejected. Otherwise every branching
    (r, p) and both signs of the square trace are tested: the candidate survives when some
    branching has at least P(a, b, c, d) roots available, or lies outside the bound's hypotheses.

    Args:
        e: Family parameter

    Returns:
        FeasibilityVerdict with the route inequality and per-branching evidence
    """
    dims = k1_dimension_data(e)
    base = {"delta": _quad_json(dims.delta), "dim": _quad_json(dims.dim)}
    if dims.status == "rational_delta":
        return FeasibilityVerdict("k1", e, True, "rational_delta", base, (), K1_ASSUMPTIONS)
    if dims.status == "not_integral":
        return FeasibilityVerdict("k1", e, False, "not_integral", base, (), K1_ASSUMPTIONS)

    k = dims.k
    evidence = []
    for data in k1_branchings(k):
        for sign in (1, -1):
            targets = k1_twist_targets(data, sign)
            try:
                required = bound_paired(targets.query)
            except HypothesisViolation:
                required = None
            evidence.append(BranchingEvidence(data.r, data.p, sign, targets.budget, required))

    first = k1_branchings(k)[0]
    route, route_rejects, route_values = _k1_route(k, first.c_sf, first.m)
    feasible = any(item.survives for item in evidence)
    exact_values = {
        **base,
        "k": k,
        "c_sf": first.c_sf,
        "m": first.m,
        "budget": 12 + 6 * k * k,
        "required": min(
            (item.required - 8 * item.r * item.p for item in evidence if item.required is not None),
            default=None,
        ),
        "route_rejects": route_rejects,
        "surviving_branchings": [
            [item.r, item.p, "+" if item.sign > 0 else "-"] for item in evidence if item.survives
        ],
        **route_values,
    }
    logger.debug("K1(%d): k=%d c=%d route=%s feasible=%s", e, k, first.c_sf, route, feasible)
    return FeasibilityVerdict(
        "k1", e, feasible, route, exact_values,
        tuple(item.to_dict() for item in evidence), K1_ASSUMPTIONS,
    )


# ============= K2(c) =============

def k2_d(c: int) -> QuadVal:
    """FPdim(X) = c + sqrt(c^2 + 1)."""
    return QuadVal(c, 1, c * c + 1)


@dataclass(frozen=True)
class K2CenterData:
    """
    One branching of the center of a K2(c) categorification: F(B) = 1 + gX + hZ, and the
    X/Z multiplicities (j,k), (l,m), (n,p), (q,r) of D, E, G, H.
    """

    c: int
    g: int
    h: int
    j: int
    k: int
    l: int
    m: int
    n: int
    p: int
    q: int
    r: int

    @property
    def gamma_sq_sum(self) -> int:
        c = self.c
        return 4 + 3 * c * c - self.g ** 2 - self.h ** 2 - (self.j ** 2 + self.l ** 2 + self.n ** 2 + self.q ** 2)

    @property
    def gamma_cross_sum(self) -> int:
        """sum gamma_i * gamma_i^*."""
        c = self.c
        return 3 * c * c - 2 * self.g * self.h - (self.j * self.k + self.l * self.m + self.n * self.p + self.q * self.r)

    @property
    def pair_sum(self) -> int:
        """sum gamma_i (gamma_i + gamma_i^*), the number of roots in the twist sums."""
        return self.gamma_sq_sum + self.gamma_cross_sum

    @property
    def pair_sum_bound(self) -> int:
        return 4 + 3 * self.c * self.c

    @property
    def dims(self) -> Dict[str, QuadVal]:
        c, d = self.c, k2_d(self.c)
        return {
            "A": 1 + 2 * c * d,
            "B": 1 + c * d,
            "C": 1 + c * d,
            "D": 1 + (self.j + self.k) * d,
            "E": 1 + (self.l + self.m) * d,
            "G": 1 + (self.n + self.p) * d,
            "H": 1 + (self.q + self.r) * d,
        }

    def to_dict(self) -> Dict[str, object]:
        return {
            "c": self.c,
            "g": self.g,
            "h": self.h,
            "x_multiplicities": [self.j, self.l, self.n, self.q],
            "z_multiplicities": [self.k, self.m, self.p, self.r],
            "gamma_sq_sum": self.gamma_sq_sum,
            "pair_sum": self.pair_sum,
            "pair_sum_bound": self.pair_sum_bound,
        }


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def k2_branchings(c: int) -> List[K2CenterData]:
    """
    All nonnegative branchings with g + h = c, j + l + n + q = 2c, (k, m, p, r) a permutation
    of (j, l, n, q), and both sum(gamma_i^2) and sum(gamma_i gamma_i^*) nonnegative.
    """
    if c < 0:
        raise ConstraintViolation(f"c must be nonnegative, got {c}")
    found = []
    for g in range(c + 1):
        h = c - g
        square_room = 4 + 3 * c * c - g * g - h * h
        for xs in _compositions(2 * c, 4):
            if sum(x * x for x in xs) > square_room:
                continue
            for zs in multiset_permutations(list(xs)):
                data = K2CenterData(c, g, h, xs[0], zs[0], xs[1], zs[1], xs[2], zs[2], xs[3], zs[3])
                if data.gamma_sq_sum >= 0 and data.gamma_cross_sum >= 0:
                    found.append(data)
    return found


def k2_feasible(c: int) -> FeasibilityVerdict:
    """
    Decide whether the center obstruction rules K2(c) out.

    c = 0 is accepted outright. Twist case theta = 1 needs 4 + 3c^2 >= 8c*sqrt((c^2+1)/2)
    (whose relaxation is 4 + 3c^2 >= 4*sqrt(2)*c^2); case theta = i needs
    8 + 6c^2 >= (4*sqrt(2) + 2)c^2 when c^2 + 1 is twice a square and
    8 + 6c^2 >= (16/sqrt(5))c^2 otherwise. Feasible when either twist case survives.
    """
    if c == 0:
        return FeasibilityVerdict(
            "k2", 0, True, "rational_d", {"d": _quad_json(k2_d(0))}, (), K2_ASSUMPTIONS
        )
    c_sf, s = squarefree_part(c * c + 1)
    square_c = c * c

    # theta = 1
    budget_one = 4 + 3 * square_c
    relaxed_one = QuadVal(budget_one) >= QuadVal(0, 4 * square_c, 2)
    needed_one = QuadVal(0, 4 * c, 2 * (c * c + 1))
    refined_one = QuadVal(budget_one) >= needed_one
    exact_one = bound_sqrt2(0, 4 * c * s) if c_sf == 2 else bound_sqrt_general(0, 4 * c * s, c_sf)

    # theta = i
    budget_i = 8 + 6 * square_c
    twice_square = c_sf == 2
    if twice_square:
        needed_i = QuadVal(2 * square_c, 4 * square_c, 2)
        exact_i = bound_sqrt2(2 * square_c, 4 * c * s)
    else:
        needed_i = QuadVal(0, Fraction(16 * square_c, 5), 5)
        exact_i = bound_sqrt_general(2 * square_c, 4 * c * s, c_sf)
    survives_i = QuadVal(budget_i) >= needed_i

    survives_one = relaxed_one and refined_one
    feasible = survives_one or survives_i
    case = "theta_i_twice_square" if twice_square else "theta_i_general"
    exact_values = {
        "d": _quad_json(k2_d(c)),
        "c_sf": c_sf,
        "budget": budget_i,
        "required": exact_i,
        "theta_one": {
            "budget": budget_one,
            "relaxed_holds": relaxed_one,
            "needed": _quad_json(needed_one),
            "refined_holds": refined_one,
            "exact_required": exact_one,
            "survives": survives_one,
        },
        "theta_i": {
            "budget": budget_i,
            "twice_square": twice_square,
            "needed": _quad_json(needed_i),
            "exact_required": exact_i,
            "survives": survives_i,
        },
    }
    logger.debug("K2(%d): theta=1 %s, theta=i %s", c, survives_one, survives_i)
    return FeasibilityVerdict("k2", c, feasible, case, exact_values, (), K2_ASSUMPTIONS)


# ============= Twist trace identities =============

@dataclass(frozen=True)
class IdentityCheck:
    name: str
    holds: bool
    detail: str

    def to_dict(self) -> Dict[str, object]:
        return {"name": self.name, "holds": self.holds, "detail": self.detail}


@dataclass(frozen=True)
class TwistIdentityReport:
    family: str
    param: int
    twists: Dict[str, str]
    checks: Tuple[IdentityCheck, ...]

    @property
    def passed(self) -> bool:
        return all(check.holds for check in self.checks)

    def to_dict(self) -> Dict[str, object]:
        return {
            "family": self.family,
            "param": self.param,
            "twists": self.twists,
            "checks": [check.to_dict() for check in self.checks],
            "passed": self.passed,
        }


def _unit_twist_solutions(qfield: QuadCycloField, dims: Tuple[QuadVal, ...], total: QuadVal) -> List[Tuple[int, ...]]:
    """Exponent triples j with 1 + sum dims[i] * zeta^j[i] = total in Q(sqrt c)(zeta_N)."""
    roots = qfield.roots()
    scaled = [[qfield.from_quad(dim) * root for root in roots] for dim in dims]
    one, target = qfield.from_quad(QuadVal(1)), qfield.from_quad(total)
    solutions = []
    for exponents in product(range(qfield.order), repeat=len(dims)):
        value = one
        for row, j in zip(scaled, exponents):
            value = value + row[j]
        if value == target:
            solutions.append(exponents)
    return solutions


def _k1_identity_checks(e: int) -> TwistIdentityReport:
    if e != 2 and e % 3:
        raise ConstraintViolation(f"K1({e}) has irrational delta with non-integral k = e/3")
    k = Fraction(e, 3)
    delta = k1_delta(e)
    dim = 6 + e * delta
    qfield = QuadCycloField(e * e + 12, K1_TWIST_ORDER)
    checks = []

    solutions = _unit_twist_solutions(qfield, (1 + k * delta, 2 + k * delta, 2 + k * delta), dim)
    checks.append(IdentityCheck(
        "theta_A = theta_B = theta_C = 1",
        solutions == [(0, 0, 0)],
        f"solutions of tr(theta on I(1)) = dim among order-{qfield.order} roots: {solutions}",
    ))

    step = K1_TWIST_ORDER // 3
    cube = [j * step for j in range(3)]
    forced = []
    for d_exp, e_exp, g_exp in product(cube, repeat=3):
        total = (2 + 2 * CycloElem.root(K1_TWIST_ORDER, d_exp)
                 + CycloElem.root(K1_TWIST_ORDER, e_exp) + CycloElem.root(K1_TWIST_ORDER, g_exp))
        if total.is_zero():
            forced.append((d_exp, e_exp, g_exp))
    expected = [(step, 2 * step, 2 * step), (2 * step, step, step)]
    checks.append(IdentityCheck(
        "theta_D = omega, theta_E = theta_G = omega^2",
        sorted(forced) == expected,
        f"cube-root solutions of 0 = 2 + 2 theta_D + theta_E + theta_G: {sorted(forced)}",
    ))

    if e != 2:
        k = e // 3
        omega = CycloElem.root(3, 1)
        splits = [
            (alpha, r, 2 * k - alpha - r)
            for alpha in range(2 * k + 1)
            for r in range(2 * k - alpha + 1)
            if (k + alpha * omega + (2 * k - alpha) * omega * omega).is_zero()
        ]
        checks.append(IdentityCheck(
            "alpha = k and r + p = k",
            all(alpha == k for alpha, _, _ in splits) and len(splits) == k + 1,
            f"{len(splits)} splits of 2k solve 0 = k + alpha omega + (r + p) omega^2",
        ))

        w, w2 = qfield.root(step), qfield.root(2 * step)
        traces_vanish = []
        consistent = []
        for data in k1_branchings(k):
            d = {label: qfield.from_quad(value) for label, value in data.dims.items()}
            trace = d["B"] + d["D"] * w + d["E"] * w2 + d["G"] * w2
            traces_vanish.append(trace.is_zero())
            consistent.append(all(data.decomposition_checks().values()))
        checks.append(IdentityCheck(
            "tr(theta on I(X)) = 0 for every branching",
            all(traces_vanish),
            f"{sum(traces_vanish)}/{len(traces_vanish)} branchings",
        ))
        checks.append(IdentityCheck(
            "I(1), I(X), I(Z), I(Y) dimensions re-sum to dim",
            all(consistent),
            f"{sum(consistent)}/{len(consistent)} branchings",
        ))

    twists = {"A": "1", "B": "1", "C": "1", "D": "ω", "E": "ω²", "G": "ω²", "H": "ω²", "J": "ω²"}
    return TwistIdentityReport("k1", e, twists, tuple(checks))


def _is_sign_paired(exponents: Tuple[int, ...], order: int) -> bool:
    """The multiset is {t, t, -t, -t}."""
    half = order // 2
    first = exponents[0]
    return sorted(exponents) == sorted([first, first, (first + half) % order, (first + half) % order])


def _k2_identity_checks(c: int) -> TwistIdentityReport:
    if c < 0:
        raise ConstraintViolation(f"c must be nonnegative, got {c}")
    d = k2_d(c)
    qfield = QuadCycloField(c * c + 1, K2_TWIST_ORDER)
    checks = []

    solutions = _unit_twist_solutions(qfield, (1 + 2 * c * d, 1 + c * d, 1 + c * d), 4 + 4 * c * d)
    checks.append(IdentityCheck(
        "theta_A = theta_B = theta_C = 1",
        solutions == [(0, 0, 0)],
        f"solutions of tr(theta on I(1)) = dim among order-{qfield.order} roots: {solutions}",
    ))

    order = K2_TWIST_ORDER
    vanishing = [
        exps for exps in product(range(order), repeat=4)
        if sum((CycloElem.root(order, j) for j in exps), CycloElem.from_rational(0)).is_zero()
    ]
    equal_squares = [exps for exps in vanishing if len({(2 * j) % order for j in exps}) == 1]
    unpaired = [exps for exps in vanishing if not _is_sign_paired(exps, order)]
    checks.append(IdentityCheck(
        "theta_D = theta_E = -theta_G = -theta_H up to relabeling",
        bool(equal_squares) and all(_is_sign_paired(exps, order) for exps in equal_squares),
        f"{len(equal_squares)} fourth-root solutions with equal squares, all sign-paired; "
        f"{len(unpaired)} unpaired solutions need mixed squares",
    ))

    double = qfield.from_quad(2 * (2 + 2 * c * d))
    checks.append(IdentityCheck(
        "I(Y) = 2D is impossible",
        all(not (double * root).is_zero() for root in qfield.roots()),
        "0 = 2 dim(D) theta_D has no root-of-unity solution",
    ))

    twists = {"A": "1", "B": "1", "C": "1", "D": "θ", "E": "θ", "G": "-θ", "H": "-θ", "θ": "1 or i"}
    return TwistIdentityReport("k2", c, twists, tuple(checks))


def twist_identity_checks(family: str, param: int) -> TwistIdentityReport:
    """
    Re-derive the forced twists of the center from the trace identities, exactly, over the
    roots of order K1_TWIST_ORDER (K1) or K2_TWIST_ORDER (K2).

    Args:
        family: 'k1' or 'k2'
        param: e for K1, c for K2
    """
    if family == "k1":
        return _k1_identity_checks(param)
    if family == "k2":
        return _k2_identity_checks(param)
    raise ValueError(f"unknown family '{family}'")


# ============= Scans =============

@dataclass(frozen=True)
class ScanReport:
    family: str
    max_param: int
    verdicts: Tuple[FeasibilityVerdict, ...]

    @property
    def survivors(self) -> Tuple[int, ...]:
        return tuple(v.param for v in self.verdicts if v.feasible)

    @property
    def expected(self) -> Tuple[int, ...]:
        return tuple(p for p in EXPECTED_SURVIVORS[self.family] if p <= self.max_param)

    @property
    def matches_claim(self) -> bool:
        return self.survivors == self.expected

    def to_rows(self) -> List[Dict[str, object]]:
        return [v.to_row() for v in self.verdicts]

    def to_dict(self, detail: bool = False) -> Dict[str, object]:
        return {
            "family": self.family,
            "max_param": self.max_param,
            "survivors": list(self.survivors),
            "expected": list(self.expected),
            "matches_claim": self.matches_claim,
            "verdicts": [v.to_dict(detail) for v in self.verdicts],
        }


SCAN_DEFAULTS = {"k1": DEFAULT_MAX_E, "k2": DEFAULT_MAX_C}


def scan(family: str, max_param: Optional[int] = None, workers: Optional[int] = 1) -> ScanReport:
    """
    Apply the feasibility verdict to every parameter 0..max_param.

    Args:
        family: 'k1' or 'k2'
        max_param: Largest e (K1) or c (K2); defaults from settings
        workers: Worker processes; the report does not depend on it

    Returns:
        ScanReport in parameter order
    """
    deciders = {"k1": k1_feasible, "k2": k2_feasible}
    if family not in deciders:
        raise ValueError(f"unknown family '{family}'")
    max_param = SCAN_DEFAULTS[family] if max_param is None else max_param
    if max_param < 0:
        raise ValueError(f"max_param must be nonnegative, got {max_param}")
    verdicts = sharded_map(deciders[family], range(max_param + 1), workers)
    report = ScanReport(family, max_param, tuple(verdicts))
    logger.info("%s scan to %d: survivors %s", family, max_param, report.survivors)
    return report
