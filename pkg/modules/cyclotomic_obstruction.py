"""
Cyclotomic Obstruction Module
Lower bounds on the number of roots of unity summing to a + b*sqrt(c), Galois orbit sums,
the orbit rewriting that reduces any representation to small orders, and a brute-force oracle
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import divisors, factorint

from config.settings import DEFAULT_MAX_COUNT, DEFAULT_MAX_ORDER
from modules.errors import FuscatError, HypothesisViolation
from modules.exact_arith import (
    CycloElem,
    QuadVal,
    as_quad,
    cyclo_to_quad,
    euler_phi,
    is_squarefree,
    mobius,
    orbit_of,
    prime_factor_count,
    quadratic_discriminant,
    sqrt_fixing_generators,
)

logger = logging.getLogger(__name__)

Root = Tuple[int, int]


# ============= Closed-form bounds =============

@dataclass(frozen=True)
class ObstructionQuery:
    """Targets sum = -a - b*sqrt(c) and sum of squares = -a - d*sqrt(c)."""

    a: int
    b: int
    c: int
    d: int = 0

    @property
    def t(self) -> int:
        return prime_factor_count(self.c)


def bound_sqrt_general(a: int, b: int, d: int) -> int:
    """At least |b| * phi(2d) roots of unity are needed to write a + b*sqrt(d), d squarefree."""
    if d < 1 or not is_squarefree(d):
        raise HypothesisViolation(f"d = {d} must be a positive squarefree integer")
    return abs(b) * euler_phi(2 * d)


def bound_sqrt2(a: int, b: int) -> int:
    """At least |a| + 2|b| roots of unity are needed to write a + b*sqrt(2)."""
    return abs(a) + 2 * abs(b)


def paired_case(c: int) -> str:
    """Which branch of the paired bound applies to c."""
    return "three_mod_four_odd_t" if c % 4 == 3 and prime_factor_count(c) % 2 == 1 else "otherwise"


def bound_paired(query: ObstructionQuery) -> int:
    """
    Lower bound on N for N roots of unity with sum -a - b*sqrt(c) and sum of squares
    -a - d*sqrt(c):

        b*phi(c) + d*phi(c) + b + 2a   if c = 3 mod 4 and c has an odd number of prime factors
        b*phi(c) - 2b + 2a             otherwise

    Raises:
        HypothesisViolation: c even, 3 does not divide c, c not squarefree, or a, b, d negative
    """
    a, b, c, d = query.a, query.b, query.c, query.d
    _check_paired_hypotheses(c)
    if min(a, b, d) < 0:
        raise HypothesisViolation(f"a, b, d must be nonnegative, got ({a}, {b}, {d})")
    phi = euler_phi(c)
    if paired_case(c) == "three_mod_four_odd_t":
        return b * phi + d * phi + b + 2 * a
    return b * phi - 2 * b + 2 * a


def _check_paired_hypotheses(c: int) -> None:
    if c < 1 or c % 2 == 0:
        raise HypothesisViolation(f"c = {c} must be odd")
    if c % 3:
        raise HypothesisViolation(f"c = {c} must be divisible by 3")
    if not is_squarefree(c):
        raise HypothesisViolation(f"c = {c} must be squarefree")


# ============= Galois orbits =============

def epsilon_of(c: int) -> int:
    """0 when c = 1 mod 4, 1 when c = 2, 3 mod 4."""
    return 0 if c % 4 == 1 else 1


@dataclass(frozen=True)
class OrbitRecord:
    order: int
    exponents: Tuple[int, ...]
    total: QuadVal
    square_total: QuadVal

    @property
    def size(self) -> int:
        return len(self.exponents)

    def to_dict(self) -> Dict[str, object]:
        return {
            "order": self.order,
            "size": self.size,
            "exponents": list(self.exponents),
            "sum": self.total.to_dict(),
            "sum_display": str(self.total),
            "square_sum": self.square_total.to_dict(),
            "square_sum_display": str(self.square_total),
        }


@dataclass(frozen=True)
class OrbitReport:
    c: int
    order: int
    epsilon: int
    n: int
    L: int
    orbits: Tuple[OrbitRecord, ...]

    def to_dict(self) -> Dict[str, object]:
        return {
            "c": self.c,
            "order": self.order,
            "epsilon": self.epsilon,
            "n": self.n,
            "L": self.L,
            "orbits": [orbit.to_dict() for orbit in self.orbits],
        }

    def to_rows(self) -> List[Dict[str, object]]:
        return [
            {
                "c": self.c,
                "order": orbit.order,
                "size": orbit.size,
                "sum": str(orbit.total),
                "square_sum": str(orbit.square_total),
                "exponents": " ".join(str(j) for j in orbit.exponents),
            }
            for orbit in self.orbits
        ]


def _primitive_exponents(Y: int) -> List[int]:
    return [j for j in range(Y) if math.gcd(j, Y) == 1]


def orbit_exponents(Y: int, j: int, c: int) -> Tuple[int, ...]:
    """Orbit of zeta_Y**j under Gal(Q(zeta_Y)/Q(sqrt c))."""
    return orbit_of(j, Y, sqrt_fixing_generators(Y, c))


def _exponent_sum(Y: int, exponents: Sequence[int], power: int = 1) -> CycloElem:
    coeffs = [0] * Y
    for j in exponents:
        coeffs[(power * j) % Y] += 1
    return CycloElem(Y, tuple(coeffs))


def orbit_sums(c: int, Y: int) -> OrbitReport:
    """
    Partition the primitive Y-th roots of unity into Gal(Q(zeta_Y)/Q(sqrt c))-orbits and sum
    each orbit and its squares exactly.

    Raises:
        HypothesisViolation: c is not squarefree or Y < 1
    """
    if c < 1 or not is_squarefree(c):
        raise HypothesisViolation(f"c = {c} must be a positive squarefree integer")
    if Y < 1:
        raise HypothesisViolation(f"order must be positive, got {Y}")
    generators = sqrt_fixing_generators(Y, c)
    seen = set()
    records = []
    for j in _primitive_exponents(Y):
        if j in seen:
            continue
        exponents = orbit_of(j, Y, generators)
        seen.update(exponents)
        records.append(OrbitRecord(
            order=Y,
            exponents=exponents,
            total=cyclo_to_quad(_exponent_sum(Y, exponents), c),
            square_total=cyclo_to_quad(_exponent_sum(Y, exponents, 2), c),
        ))
    epsilon = epsilon_of(c)
    return OrbitReport(
        c=c,
        order=Y,
        epsilon=epsilon,
        n=4 ** epsilon * c,
        L=math.lcm(2 ** (epsilon + 2) * c, 3),
        orbits=tuple(records),
    )


def orbits_dividing(c: int, modulus: int) -> List[OrbitRecord]:
    """Every orbit of every order dividing modulus."""
    return [orbit for Y in divisors(modulus) for orbit in orbit_sums(c, Y).orbits]


# ============= Orbit rewriting =============

@dataclass(frozen=True)
class OrbitTerm:
    """A Galois-invariant multiset of roots zeta_order**j."""

    order: int
    exponents: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.exponents)

    def total(self) -> CycloElem:
        return _exponent_sum(self.order, self.exponents)

    def square_total(self) -> CycloElem:
        return _exponent_sum(self.order, self.exponents, 2)


def _term(order: int, exponents: Sequence[int]) -> OrbitTerm:
    return OrbitTerm(order, tuple(sorted(e % order for e in exponents)))


def _full_orbit_replacement(Y: int, track_squares: bool) -> Optional[OrbitTerm]:
    """Replacement for the complete set of primitive Y-th roots (sqrt c not in Q(zeta_Y))."""
    mu = mobius(Y)
    if not track_squares:
        if mu == 1:
            return _term(1, [0])
        if mu == -1:
            return _term(2, [1])
        return None
    two_adic = (Y & -Y).bit_length() - 1
    odd_mu = mobius(Y >> two_adic)
    if two_adic == 0:
        # sum = square sum = mu(Y)
        return {1: _term(1, [0]), -1: _term(3, [1, 2])}.get(mu)
    if two_adic == 1:
        # sum = -mu(Y/2), square sum = mu(Y/2)
        return {-1: _term(6, [1, 5]), 1: _term(2, [1])}.get(odd_mu)
    if two_adic == 2:
        # sum = 0, square sum = -2 mu(Y/4)
        return {-1: _term(12, [1, 5, 7, 11]), 1: _term(4, [1, 3])}.get(odd_mu)
    return None


def _normalize_one(Y: int, j: int, c: int, track_squares: bool) -> Optional[OrbitTerm]:
    epsilon = epsilon_of(c)
    n = 4 ** epsilon * c
    if Y % n:
        return _full_orbit_replacement(Y, track_squares)

    c_factors = factorint(c)
    y_factors = factorint(Y)
    two_limit = 1 + epsilon + c_factors.get(2, 0) + (1 if track_squares else 0)
    if y_factors.get(2, 0) > two_limit:
        return None
    if any(y_factors.get(p, 0) > 1 for p in c_factors if p != 2):
        return None

    u = math.prod(p ** e for p, e in y_factors.items() if p != 2 and p not in c_factors)
    if u == 1:
        return _term(Y, orbit_exponents(Y, j, c))
    v = Y // u
    mu = mobius(u)
    if mu == 0:
        return None
    inner = orbit_exponents(v, (j * pow(u, -1, v)) % v, c)
    if mu == 1:
        return _term(v, inner)
    if not track_squares:
        w = math.lcm(2, v)
        return _term(w, [e * (w // v) + w // 2 for e in inner])
    w = math.lcm(3, v)
    return _term(w, [e * (w // v) + s * w // 3 for s in (1, 2) for e in inner])


def orbit_normalize(orbits: Sequence[Root], c: int, track_squares: bool = False) -> List[OrbitTerm]:
    """
    Rewrite a multiset of Galois orbits into orbits of small order.

    Each input (Y, j) stands for the orbit of zeta_Y**j under Gal(Q(zeta_Y)/Q(sqrt c)). Orbits
    of complete primitive sets collapse to +-1 (or, tracking squares, to third, sixth, twelfth
    and fourth roots), zero-sum orbits are dropped, and the part of Y prime to 2c is absorbed
    through its Moebius value. The total sum (and square sum when tracked) is preserved and
    the root count never grows; every output order divides 2^(eps+1) c, or L when tracking.
    """
    terms = []
    for Y, j in orbits:
        term = _normalize_one(Y, j, c, track_squares)
        if term is not None:
            terms.append(term)
    return terms


def multiset_totals(terms: Sequence[OrbitTerm]) -> Tuple[CycloElem, CycloElem]:
    """Sum and square sum of all roots in the terms."""
    total = CycloElem.from_rational(0)
    square_total = CycloElem.from_rational(0)
    for term in terms:
        total = total + term.total()
        square_total = square_total + term.square_total()
    return total, square_total


def input_orbit_terms(orbits: Sequence[Root], c: int) -> List[OrbitTerm]:
    return [_term(Y, orbit_exponents(Y, j, c)) for Y, j in orbits]


# ============= Certificates =============

@dataclass(frozen=True)
class CertificateCheck:
    """
    The bound follows from a linear functional f with f(orbit)/|orbit| >= -1 for every orbit
    of every order dividing `modulus`; `worst` is the smallest ratio seen.
    """

    name: str
    c: int
    modulus: int
    worst: Fraction
    orbits_checked: int

    @property
    def passed(self) -> bool:
        return self.worst >= -1

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "c": self.c,
            "modulus": self.modulus,
            "worst_ratio": str(self.worst),
            "orbits_checked": self.orbits_checked,
            "passed": self.passed,
        }


def _coordinates(value: QuadVal, c: int) -> Tuple[Fraction, Fraction]:
    value = as_quad(value)
    return value.a, value.b if value.c == c else Fraction(0)


def _certificate(name: str, c: int, modulus: int, functional) -> CertificateCheck:
    orbits = orbits_dividing(c, modulus)
    worst = min(Fraction(functional(orbit)) / orbit.size for orbit in orbits)
    return CertificateCheck(name, c, modulus, worst, len(orbits))


def certificate_sqrt2() -> CertificateCheck:
    """f(x + y*sqrt 2) = x + 2y over the orbits of 8th roots."""
    def functional(orbit: OrbitRecord) -> Fraction:
        x, y = _coordinates(orbit.total, 2)
        return x + 2 * y

    return _certificate("sqrt2", 2, 8, functional)


def certificate_sqrt_general(c: int) -> CertificateCheck:
    """Both f = +-y*phi(2c) over the orbits of (2^(eps+1) c)-th roots."""
    if c < 2 or not is_squarefree(c):
        raise HypothesisViolation(f"c = {c} must be a squarefree integer > 1")
    phi = euler_phi(2 * c)

    def functional(orbit: OrbitRecord) -> Fraction:
        _, y = _coordinates(orbit.total, c)
        return -abs(y) * phi

    return _certificate("sqrt_general", c, 2 ** (epsilon_of(c) + 1) * c, functional)


def certificate_paired(c: int) -> CertificateCheck:
    """
    f(x + y*sqrt c, z + w*sqrt c) = y*phi(c) + w*phi(c) + x + z + y in the odd-t, 3 mod 4 case,
    y*phi(c) + x + z - 2y otherwise, over the orbits of L-th roots.
    """
    _check_paired_hypotheses(c)
    phi = euler_phi(c)
    three_mod_four = paired_case(c) == "three_mod_four_odd_t"

    def functional(orbit: OrbitRecord) -> Fraction:
        x, y = _coordinates(orbit.total, c)
        z, w = _coordinates(orbit.square_total, c)
        if three_mod_four:
            return y * phi + w * phi + x + z + y
        return y * phi + x + z - 2 * y

    epsilon = epsilon_of(c)
    return _certificate("paired", c, math.lcm(2 ** (epsilon + 2) * c, 3), functional)


# ============= Brute-force oracle =============

@dataclass(frozen=True)
class MinRootsResult:
    """status is 'found', 'exceeds_budget' or 'impossible' (target outside Z[zeta_max_order])."""

    status: str
    minimum: Optional[int]
    witness: Tuple[Root, ...]
    budget: Tuple[int, int]
    search_start: int

    @property
    def found(self) -> bool:
        return self.status == "found"

    def to_dict(self) -> Dict[str, object]:
        return {
            "status": self.status,
            "minimum": self.minimum,
            "witness": [list(root) for root in self.witness],
            "budget": {"max_order": self.budget[0], "max_count": self.budget[1]},
            "search_start": self.search_start,
        }


def conjugate_house_bound(*targets: QuadVal) -> int:
    """
    Every Galois conjugate of a sum of k roots of unity has absolute value <= k, so k is at
    least the ceiling of max |sigma(target)|.
    """
    bound = 0
    for target in targets:
        target = as_quad(target)
        house = max(abs(target), abs(target.conj()))
        k = math.floor(float(house))
        while QuadVal(k) < house:
            k += 1
        while k > 0 and QuadVal(k - 1) >= house:
            k -= 1
        bound = max(bound, k)
    return bound


def _root_vectors(N: int, powers: Sequence[int]) -> np.ndarray:
    rows = []
    for j in range(N):
        row = []
        for power in powers:
            row += [int(v) for v in CycloElem.root(N, power * j).reduced_vector()]
        rows.append(row)
    return np.array(rows, dtype=np.int64)


def _target_vector(targets: Sequence[QuadVal], N: int) -> Optional[np.ndarray]:
    coords = []
    for target in targets:
        target = as_quad(target)
        if not target.is_rational and N % quadratic_discriminant(target.c):
            return None
        vector = CycloElem.from_quad(target).embed(N).reduced_vector()
        if any(v.denominator != 1 for v in vector):
            return None
        coords += [int(v) for v in vector]
    return np.array(coords, dtype=np.int64)


def _meet_in_the_middle(vectors: np.ndarray, target: np.ndarray, k: int) -> Optional[Tuple[int, ...]]:
    """Smallest sorted exponent multiset of size k whose vectors sum to target."""
    N = len(vectors)
    right_size = k // 2
    left_size = k - right_size
    table: Dict[bytes, Tuple[int, ...]] = {}
    for combo in combinations_with_replacement(range(N), right_size):
        key = vectors[list(combo)].sum(axis=0).tobytes()
        table.setdefault(key, combo)
    best = None
    for combo in combinations_with_replacement(range(N), left_size):
        need = (target - vectors[list(combo)].sum(axis=0)).tobytes()
        match = table.get(need)
        if match is not None:
            candidate = tuple(sorted(combo + match))
            if best is None or candidate < best:
                best = candidate
    return best


def _as_roots(N: int, exponents: Sequence[int]) -> Tuple[Root, ...]:
    roots = []
    for j in exponents:
        g = math.gcd(j, N)
        roots.append((N // g, j // g))
    return tuple(sorted(roots))


def _brute(
    targets: Sequence[QuadVal],
    powers: Sequence[int],
    max_order: int,
    max_count: int,
) -> MinRootsResult:
    budget = (max_order, max_count)
    start = conjugate_house_bound(*targets)
    target = _target_vector(targets, max_order)
    if target is None:
        return MinRootsResult("impossible", None, (), budget, start)
    vectors = _root_vectors(max_order, powers)
    for k in range(start, max_count + 1):
        found = _meet_in_the_middle(vectors, target, k)
        if found is not None:
            witness = _as_roots(max_order, found)
            for power, value in zip(powers, targets):
                check = _exponent_sum(max_order, [power * j for j in found])
                if check != CycloElem.from_quad(as_quad(value)):
                    raise FuscatError(f"witness {witness} does not reproduce {value}")
            logger.debug("minimum %d for %s within %s", k, [str(t) for t in targets], budget)
            return MinRootsResult("found", k, witness, budget, start)
    return MinRootsResult("exceeds_budget", None, (), budget, start)


def minroots_bruteforce(
    target: QuadVal,
    max_order: int = DEFAULT_MAX_ORDER,
    max_count: int = DEFAULT_MAX_COUNT,
) -> MinRootsResult:
    """
    Fewest roots of unity of order dividing max_order summing exactly to target.

    Args:
        target: Quadratic value
        max_order: Roots are powers of zeta_max_order
        max_count: Largest multiset size searched

    Returns:
        MinRootsResult with a witness of (order, exponent) pairs when found
    """
    return _brute([as_quad(target)], [1], max_order, max_count)


def minroots_paired_bruteforce(
    target1: QuadVal,
    target2: QuadVal,
    max_order: int = DEFAULT_MAX_ORDER,
    max_count: int = DEFAULT_MAX_COUNT,
) -> MinRootsResult:
    """Fewest roots theta_i with sum theta_i = target1 and sum theta_i^2 = target2."""
    return _brute([as_quad(target1), as_quad(target2)], [1, 2], max_order, max_count)
