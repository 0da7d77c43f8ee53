"""
Rank-4 Families Module
The six-parameter rings K(c, e, k, l, p, q), the four-parameter coordinates R(x, y, g, d)
and the conversions between them
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, fields
from functools import partial
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from config.settings import DEFAULT_BOX, RANK4_DUAL, RANK4_LABELS
from modules.based_ring import FusionRing
from modules.errors import ConstraintViolation, NoSolution
from modules.parallel import sharded_map

logger = logging.getLogger(__name__)


# ============= Parameter types =============

@dataclass(frozen=True)
class KParams:
    c: int
    e: int
    k: int
    l: int
    p: int
    q: int

    def as_tuple(self) -> Tuple[int, ...]:
        return tuple(getattr(self, f.name) for f in fields(self))

    def __str__(self) -> str:
        return "K({})".format(", ".join(str(v) for v in self.as_tuple()))


@dataclass(frozen=True)
class RParams:
    x: int
    y: int
    g: int
    d: int

    def as_tuple(self) -> Tuple[int, ...]:
        return (self.x, self.y, self.g, self.d)

    def negated(self) -> "RParams":
        return RParams(-self.x, -self.y, -self.g, -self.d)

    def __str__(self) -> str:
        return f"R({self.x}, {self.y}, {self.g}, {self.d})"


@dataclass(frozen=True)
class Box:
    """Enumeration bounds |x| <= xmax, |y| <= ymax, |g| <= gmax, |d| <= dmax."""

    xmax: int = DEFAULT_BOX["xmax"]
    ymax: int = DEFAULT_BOX["ymax"]
    gmax: int = DEFAULT_BOX["gmax"]
    dmax: int = DEFAULT_BOX["dmax"]

    def to_dict(self) -> Dict[str, int]:
        return {"xmax": self.xmax, "ymax": self.ymax, "gmax": self.gmax, "dmax": self.dmax}


def k1_params(e: int) -> KParams:
    return KParams(1, e, 1, 0, 0, 0)


def k2_params(c: int) -> KParams:
    return KParams(c, 0, 0, 1, c, 0)


# ============= Constraint system =============

@dataclass(frozen=True)
class EquationCheck:
    name: str
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class ConstraintReport:
    equations: Tuple[EquationCheck, ...]
    negative: Tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.negative and all(eq.holds for eq in self.equations)

    def __bool__(self) -> bool:
        return self.ok

    def violations(self) -> List[str]:
        problems = [f"{eq.name}: {eq.lhs} != {eq.rhs}" for eq in self.equations if not eq.holds]
        problems += [f"{name} < 0" for name in self.negative]
        return problems


def k_constraints_ok(c: int, e: int, k: int, l: int, p: int, q: int) -> ConstraintReport:
    """
    Evaluate the four defining equations of K(c, e, k, l, p, q) and nonnegativity.

    Returns:
        ConstraintReport, truthy iff every equation holds and all six values are >= 0
    """
    equations = (
        EquationCheck("kl + lc = lp + kq", k * l + l * c, l * p + k * q),
        EquationCheck("kp + le + kc = 2lq + k^2", k * p + l * e + k * c, 2 * l * q + k * k),
        EquationCheck("l^2 + c^2 = 1 + q^2 + p^2", l * l + c * c, 1 + q * q + p * p),
        EquationCheck("l^2 + k^2 + q^2 = 1 + 2pk + qe", l * l + k * k + q * q, 1 + 2 * p * k + q * e),
    )
    values = {"c": c, "e": e, "k": k, "l": l, "p": p, "q": q}
    negative = tuple(name for name, value in values.items() if value < 0)
    return ConstraintReport(equations, negative)


def multiplication_matrices(params: KParams) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """M_X, M_Y, M_Z of K(c, e, k, l, p, q) in the basis (1, X, Y, Z)."""
    c, e, k, l, p, q = params.as_tuple()
    m_x = np.array([[0, 0, 0, 1], [1, p, q, p], [0, l, k, q], [0, c, l, p]], dtype=np.int64)
    m_y = np.array([[0, 0, 1, 0], [0, q, k, l], [1, k, e, k], [0, l, k, q]], dtype=np.int64)
    m_z = np.array([[0, 1, 0, 0], [0, p, l, c], [0, q, k, l], [1, p, q, p]], dtype=np.int64)
    return m_x, m_y, m_z


def build_K(params: Union[KParams, Tuple[int, ...]]) -> FusionRing:
    """
    The rank-4 ring with X* = Z, Y* = Y and
    X^2 = pX + lY + cZ, XY = qX + kY + lZ, XZ = 1 + pX + qY + pZ, Y^2 = 1 + kX + eY + kZ.

    Raises:
        ConstraintViolation: the parameters violate the constraint system
    """
    if not isinstance(params, KParams):
        params = KParams(*params)
    report = k_constraints_ok(*params.as_tuple())
    if not report:
        raise ConstraintViolation(f"{params}: " + "; ".join(report.violations()))
    matrices = (np.eye(4, dtype=np.int64),) + multiplication_matrices(params)
    N = np.stack([m.T for m in matrices])
    return FusionRing(4, RANK4_DUAL, N.tolist(), RANK4_LABELS)


def k1_ring(e: int) -> FusionRing:
    return build_K(k1_params(e))


def k2_ring(c: int) -> FusionRing:
    return build_K(k2_params(c))


# ============= R(x, y, g, d) =============

def r_equation_residual(params: RParams) -> int:
    """dxy - g(2x^2 - y^2) - x^2 - 1, zero exactly when the R equation holds."""
    x, y, g, d = params.as_tuple()
    return d * x * y - g * (2 * x * x - y * y) - x * x - 1


def _k_coordinates(params: RParams) -> Dict[str, int]:
    x, y, g, d = params.as_tuple()
    return {
        "c": (y * g + x * d + y) // 2,
        "e": 2 * x * g - y * d + 2 * x,
        "k": g * y,
        "l": g * x,
        "p": (y * g + x * d - y) // 2,
        "q": x * g + x,
    }


def r_is_valid(params: RParams) -> bool:
    """Parity, the R equation and nonnegativity of the six derived values."""
    x, y, g, d = params.as_tuple()
    if (y * g + x * d + y) % 2 or r_equation_residual(params):
        return False
    return all(v >= 0 for v in _k_coordinates(params).values())


def r_to_k(params: RParams) -> KParams:
    """
    R(x, y, g, d) = K((yg+xd+y)/2, 2xg-yd+2x, gy, gx, (yg+xd-y)/2, xg+x).

    Raises:
        ConstraintViolation: parity, the R equation or nonnegativity fails
    """
    x, y, g, d = params.as_tuple()
    if (y * g + x * d + y) % 2:
        raise ConstraintViolation(f"{params}: yg + xd + y = {y * g + x * d + y} is odd")
    residual = r_equation_residual(params)
    if residual:
        raise ConstraintViolation(f"{params}: dxy - g(2x^2 - y^2) - x^2 - 1 = {residual}")
    coords = _k_coordinates(params)
    negative = [f"{name} = {value}" for name, value in coords.items() if value < 0]
    if negative:
        raise ConstraintViolation(f"{params}: " + ", ".join(negative) + " is negative")
    return KParams(**coords)


def r_candidates(params: KParams) -> List[Tuple[int, int, int]]:
    """
    (x, y, g) with l = gx, k = gy and gcd(x, y) = 1. When k = l = 0 the split is degenerate:
    g = 0 and (x, y) runs over (0, +-1), (+-1, 0).
    """
    g = math.gcd(params.k, params.l)
    if g == 0:
        return [(0, 1, 0), (0, -1, 0), (1, 0, 0), (-1, 0, 0)]
    return [(params.l // g, params.k // g, g)]


def _r_from_split(params: KParams, x: int, y: int, g: int) -> RParams:
    c, e, k, l, p, q = params.as_tuple()
    if y:
        if (c - p) % y:
            raise NoSolution(f"y = {y} does not divide c - p = {c - p}")
        b = (c - p) // y
    else:
        if q % x:
            raise NoSolution(f"x = {x} does not divide q = {q}")
        b = q // x - g
    if x:
        if (p + c - g * y) % x:
            raise NoSolution(f"x = {x} does not divide p + c - gy")
        d = (p + c - g * y) // x
    else:
        if (2 * q - e) % y:
            raise NoSolution(f"y = {y} does not divide 2q - e")
        d = (2 * q - e) // y

    if b not in (1, -1):
        raise NoSolution(f"b = {b} is not +-1")
    candidate = RParams(x, y, g, d) if b == 1 else RParams(x, y, g, d).negated()
    try:
        if r_to_k(candidate) == params:
            return candidate
    except ConstraintViolation as err:
        raise NoSolution(f"{candidate} is invalid ({err})") from err
    raise NoSolution(f"{candidate} does not reproduce the parameters")


def k_to_r(params: KParams) -> RParams:
    """
    Recover R coordinates: l = gx, k = gy with gcd(x, y) = 1, c - p = by, q = (g + b)x,
    p + c - gy = dx (or 2q - e = dy when x = 0); b is forced to be +-1 and b = -1 yields
    R(-x, -y, -g, -d). Every split from r_candidates is tried in order.

    Raises:
        ConstraintViolation: params is not a valid K ring
        NoSolution: no R coordinates reproduce params
    """
    report = k_constraints_ok(*params.as_tuple())
    if not report:
        raise ConstraintViolation(f"{params}: " + "; ".join(report.violations()))
    reasons = []
    for x, y, g in r_candidates(params):
        try:
            return _r_from_split(params, x, y, g)
        except NoSolution as e:
            reasons.append(f"(x, y, g) = ({x}, {y}, {g}): {e}")
    raise NoSolution(f"{params}: " + "; ".join(reasons))


# ============= Structure of valid quadruples =============

@dataclass(frozen=True)
class StructuralReport:
    params: RParams
    x_plus_y_odd: bool
    g_nonzero: bool
    signs_agree: bool

    @property
    def ok(self) -> bool:
        return self.x_plus_y_odd and self.g_nonzero and self.signs_agree


def structural_predicates(params: RParams) -> StructuralReport:
    """x + y odd, g != 0, and x, y both <= 0 or both >= 0."""
    x, y, g, _ = params.as_tuple()
    return StructuralReport(
        params=params,
        x_plus_y_odd=(x + y) % 2 == 1,
        g_nonzero=g != 0,
        signs_agree=(x >= 0 and y >= 0) or (x <= 0 and y <= 0),
    )


def solutions_for_xy(x: int, y: int, gmax: int, dmax: int, require_nonnegative: bool = False) -> List[RParams]:
    """All (g, d) with |g| <= gmax, |d| <= dmax satisfying parity and the R equation."""
    found = []
    for g in range(-gmax, gmax + 1):
        for d in _d_candidates(x, y, g, dmax):
            params = RParams(x, y, g, d)
            if (y * g + x * d + y) % 2:
                continue
            if require_nonnegative and not r_is_valid(params):
                continue
            found.append(params)
    return found


def _d_candidates(x: int, y: int, g: int, dmax: int) -> List[int]:
    rhs = g * (2 * x * x - y * y) + x * x + 1
    if x * y:
        if rhs % (x * y):
            return []
        d = rhs // (x * y)
        return [d] if abs(d) <= dmax else []
    return list(range(-dmax, dmax + 1)) if rhs == 0 else []


def _enumerate_slice(x: int, box: Box) -> List[RParams]:
    found = []
    for y in range(-box.ymax, box.ymax + 1):
        for g in range(-box.gmax, box.gmax + 1):
            for d in _d_candidates(x, y, g, box.dmax):
                params = RParams(x, y, g, d)
                if r_is_valid(params):
                    found.append(params)
    return found


def enumerate_R(box: Optional[Box] = None, workers: Optional[int] = 1) -> List[RParams]:
    """
    Every valid R(x, y, g, d) in the box, ordered lexicographically.

    Args:
        box: Enumeration bounds (defaults to DEFAULT_BOX)
        workers: Shard over x across this many workers

    Returns:
        List of RParams
    """
    box = box or Box()
    slices = sharded_map(partial(_enumerate_slice, box=box), range(-box.xmax, box.xmax + 1), workers)
    found = [params for chunk in slices for params in chunk]
    logger.info("enumerated %d valid quadruples in %s", len(found), box.to_dict())
    return found


def normalize_family(params: KParams) -> Optional[Tuple[str, int]]:
    """('k1', e) or ('k2', c) when params is a K1/K2 member, else None."""
    c, e, k, l, p, q = params.as_tuple()
    if (c, k, l, p, q) == (1, 1, 0, 0, 0):
        return "k1", e
    if (e, k, l, q) == (0, 0, 1, 0) and c == p:
        return "k2", c
    return None
