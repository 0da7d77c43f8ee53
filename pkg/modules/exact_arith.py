"""
Exact Arithmetic Module
Rationals, real quadratic fields Q(sqrt c), cyclotomic fields Q(zeta_n) and integer polynomials.

Every verdict in fuscat is computed in these domains only; floating point appears solely in
interval cross-checks (mpmath.iv) and in display helpers.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np
from sympy import Matrix, Poly, Symbol, cyclotomic_poly, factorint, primitive_root, totient
from sympy.ntheory import legendre_symbol
from sympy.ntheory.modular import crt

from config.settings import INTERVAL_PRECISION_BITS
from modules.errors import (
    ComplexRoots,
    DivisionByZero,
    EigenvalueDegreeTooHigh,
    MixedRadicands,
    NonInvertibleGaloisIndex,
    NotADoubleRoot,
    NotInSubfield,
    ShapeMismatch,
)

logger = logging.getLogger(__name__)

Rational = Fraction
Number = Union[int, Fraction]

_T = Symbol("t")


# ============= Integer helpers =============

@lru_cache(maxsize=None)
def squarefree_part(n: int) -> Tuple[int, int]:
    """
    Split n into its squarefree part and square root of the rest.

    Args:
        n: Positive integer

    Returns:
        Tuple (c, m) with n = c * m**2 and c squarefree
    """
    if n < 1:
        raise ValueError(f"squarefree_part expects n >= 1, got {n}")
    c, m = 1, 1
    for prime, exponent in factorint(n).items():
        if exponent % 2:
            c *= prime
        m *= prime ** (exponent // 2)
    return c, m


def euler_phi(n: int) -> int:
    """Euler totient of n >= 1."""
    if n < 1:
        raise ValueError(f"euler_phi expects n >= 1, got {n}")
    return int(totient(n))


def mobius(n: int) -> int:
    """Moebius function of n >= 1."""
    factors = factorint(n)
    if any(exponent > 1 for exponent in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def prime_factor_count(n: int) -> int:
    """Number of distinct prime factors of n."""
    return len(factorint(n))


def is_squarefree(n: int) -> bool:
    return n >= 1 and squarefree_part(n)[1] == 1


def is_perfect_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def quadratic_discriminant(c: int) -> int:
    """Discriminant of Q(sqrt c) for squarefree c > 1: c if c = 1 mod 4, else 4c."""
    return c if c % 4 == 1 else 4 * c


# ============= Quadratic field elements =============

class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


def _sgn(x: Number) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True, eq=False)
class QuadVal:
    """
    Exact real number a + b*sqrt(c).

    The constructor canonicalizes: c is reduced to its squarefree part, a rational value is
    stored with b = 0 and c = 0, so equality is componentwise.
    """

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: int = 0

    def __post_init__(self):
        a, b, c = Fraction(self.a), Fraction(self.b), int(self.c)
        if c < 0:
            raise ValueError(f"radicand must be nonnegative, got {c}")
        if c > 1:
            c, m = squarefree_part(c)
            b *= m
        if c == 1:
            a += b
            b = Fraction(0)
        if c == 0 or b == 0:
            b, c = Fraction(0), 0
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    # ----- constructors -----

    @classmethod
    def sqrt(cls, n: int) -> "QuadVal":
        """sqrt(n) for an integer n >= 0."""
        return cls(0, 1, n) if n > 0 else cls()

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    # ----- field structure -----

    def conj(self) -> "QuadVal":
        return QuadVal(self.a, -self.b, self.c)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.c

    def _radicand_with(self, other: "QuadVal") -> int:
        if self.c == 0:
            return other.c
        if other.c == 0 or other.c == self.c:
            return self.c
        raise MixedRadicands(f"cannot combine sqrt({self.c}) with sqrt({other.c})")

    def __add__(self, other):
        other = as_quad(other)
        if other is None:
            return NotImplemented
        c = self._radicand_with(other)
        return QuadVal(self.a + other.a, self.b + other.b, c)

    __radd__ = __add__

    def __neg__(self) -> "QuadVal":
        return QuadVal(-self.a, -self.b, self.c)

    def __sub__(self, other):
        other = as_quad(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = as_quad(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = as_quad(other)
        if other is None:
            return NotImplemented
        c = self._radicand_with(other)
        return QuadVal(
            self.a * other.a + self.b * other.b * c,
            self.a * other.b + self.b * other.a,
            c,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadVal":
        norm = self.norm()
        if norm == 0:
            raise DivisionByZero("division by an exact zero")
        conj = self.conj()
        return QuadVal(conj.a / norm, conj.b / norm, self.c)

    def __truediv__(self, other):
        other = as_quad(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = as_quad(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> "QuadVal":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = QuadVal(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # ----- ordering -----

    def sign(self) -> Sign:
        return quad_sign(self)

    def __eq__(self, other) -> bool:
        other = as_quad(other)
        if other is None:
            return NotImplemented
        return (self.a, self.b, self.c) == (other.a, other.b, other.c)

    def __hash__(self) -> int:
        return hash(self.a) if self.b == 0 else hash((self.a, self.b, self.c))

    def __lt__(self, other) -> bool:
        return compare(self, other) < 0

    def __le__(self, other) -> bool:
        return compare(self, other) <= 0

    def __gt__(self, other) -> bool:
        return compare(self, other) > 0

    def __ge__(self, other) -> bool:
        return compare(self, other) >= 0

    def __abs__(self) -> "QuadVal":
        return -self if quad_sign(self) is Sign.NEGATIVE else self

    # ----- conversions -----

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.c)

    def to_interval(self, prec: int = INTERVAL_PRECISION_BITS):
        """Enclosure of the value as an mpmath interval at the given binary precision."""
        iv = mpmath.iv
        saved = iv.prec
        iv.prec = prec
        try:
            value = iv.mpf(self.a.numerator) / self.a.denominator
            if self.b:
                value += iv.mpf(self.b.numerator) / self.b.denominator * iv.sqrt(iv.mpf(self.c))
        finally:
            iv.prec = saved
        return value

    def to_dict(self) -> Dict[str, object]:
        return {"a": str(self.a), "b": str(self.b), "c": self.c}

    @classmethod
    def from_dict(cls, data: Dict[str, object]) -> "QuadVal":
        return cls(Fraction(str(data["a"])), Fraction(str(data["b"])), int(data["c"]))

    def __repr__(self) -> str:
        return f"QuadVal({self})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        denominator = math.lcm(self.a.denominator, self.b.denominator)
        a_int = int(self.a * denominator)
        b_int = int(self.b * denominator)
        coefficient = "" if abs(b_int) == 1 else str(abs(b_int))
        radical = f"{coefficient}√{self.c}"
        if a_int == 0:
            body = radical if b_int > 0 else f"-{radical}"
        else:
            body = f"{a_int}{'+' if b_int > 0 else '-'}{radical}"
        return body if denominator == 1 else f"({body})/{denominator}"


def as_quad(value) -> Optional[QuadVal]:
    """Coerce ints and Fractions to QuadVal; None for unsupported types."""
    if isinstance(value, QuadVal):
        return value
    if isinstance(value, np.integer):
        return QuadVal(int(value))
    if isinstance(value, (int, Fraction)):
        return QuadVal(value)
    return None


def quad_sign(x: QuadVal) -> Sign:
    """
    Exact sign of a + b*sqrt(c) by rational case analysis on a, b and a**2 - b**2*c.

    Args:
        x: Quadratic value

    Returns:
        Sign of the real number
    """
    x = as_quad(x)
    sign_a, sign_b = _sgn(x.a), _sgn(x.b)
    if sign_b == 0:
        return Sign(sign_a)
    if sign_a == 0 or sign_a == sign_b:
        return Sign(sign_b)
    return Sign(sign_a * _sgn(x.a * x.a - x.b * x.b * x.c))


def interval_sign(value) -> Optional[Sign]:
    """Sign of an mpmath interval, or None when the interval straddles zero."""
    if value.a > 0:
        return Sign.POSITIVE
    if value.b < 0:
        return Sign.NEGATIVE
    if value.a == 0 and value.b == 0:
        return Sign.ZERO
    return None


def compare(x, y) -> int:
    """
    Certified comparison of two real quadratic values.

    Values in a common field are compared exactly; values with distinct radicands are
    compared through 256-bit interval enclosures, which always separate distinct values of
    the sizes in scope.
    """
    x, y = as_quad(x), as_quad(y)
    try:
        return int(quad_sign(x - y))
    except MixedRadicands:
        sign = interval_sign(x.to_interval() - y.to_interval())
        if sign is None:
            raise MixedRadicands(f"cannot separate {x} and {y} at {INTERVAL_PRECISION_BITS} bits")
        return int(sign)


def quad_arith(x: QuadVal, y: Optional[QuadVal], op: str) -> QuadVal:
    """Dispatch one of add, sub, mul, div, conj."""
    x = as_quad(x)
    if op == "conj":
        return x.conj()
    y = as_quad(y)
    operations = {
        "add": lambda: x + y,
        "sub": lambda: x - y,
        "mul": lambda: x * y,
        "div": lambda: x / y,
    }
    if op not in operations:
        raise ValueError(f"unknown quadratic operation '{op}'")
    return operations[op]()


def exact_sum(values: Iterable) -> QuadVal:
    """
    Sum quadratic values that may come from different fields.

    Conjugate pairs are summed inside their own field first; the result must end up in a
    single field.
    """
    groups: Dict[int, QuadVal] = {}
    for value in values:
        value = as_quad(value)
        groups[value.c] = groups.get(value.c, QuadVal()) + value
    total = QuadVal()
    irrational = []
    for group in groups.values():
        if group.is_rational:
            total = total + group
        else:
            irrational.append(group)
    if len(irrational) > 1:
        raise MixedRadicands("sum does not lie in a single quadratic field")
    return total + irrational[0] if irrational else total


def sort_descending(values: Iterable) -> List[QuadVal]:
    return sorted((as_quad(v) for v in values), key=cmp_to_key(compare), reverse=True)


# ============= Cyclotomic field elements =============

@lru_cache(maxsize=None)
def cyclotomic_coefficients(n: int) -> Tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    return tuple(int(v) for v in reversed(Poly(cyclotomic_poly(n, _T), _T).all_coeffs()))


def _reduce(coeffs: List[Fraction], n: int) -> Tuple[Fraction, ...]:
    phi_n = cyclotomic_coefficients(n)
    degree = len(phi_n) - 1
    for j in range(n - 1, degree - 1, -1):
        lead = coeffs[j]
        if lead:
            shift = j - degree
            for i, p in enumerate(phi_n):
                if p:
                    coeffs[shift + i] -= lead * p
    return tuple(coeffs)


@dataclass(frozen=True, eq=False)
class CycloElem:
    """
    Exact element sum(coeffs[j] * zeta_n**j) of Q(zeta_n), n = order.

    Stored reduced modulo the n-th cyclotomic polynomial, so two elements of the same order
    are equal exactly when their coefficient tuples are.
    """

    order: int
    coeffs: Tuple[Fraction, ...]

    def __post_init__(self):
        n = int(self.order)
        if n < 1:
            raise ValueError(f"cyclotomic order must be positive, got {n}")
        folded = [Fraction(0)] * n
        for j, value in enumerate(self.coeffs):
            folded[j % n] += Fraction(value)
        object.__setattr__(self, "order", n)
        object.__setattr__(self, "coeffs", _reduce(folded, n))

    # ----- constructors -----

    @classmethod
    def root(cls, n: int, exponent: int = 1) -> "CycloElem":
        """zeta_n ** exponent."""
        coeffs = [0] * n
        coeffs[exponent % n] = 1
        return cls(n, tuple(coeffs))

    @classmethod
    def from_rational(cls, value: Number, n: int = 1) -> "CycloElem":
        coeffs = [0] * n
        coeffs[0] = Fraction(value)
        return cls(n, tuple(coeffs))

    @classmethod
    def from_quad(cls, value: QuadVal, n: Optional[int] = None) -> "CycloElem":
        """Embed a + b*sqrt(c) into Q(zeta_n) (n defaults to the conductor of sqrt(c))."""
        value = as_quad(value)
        result = cls.from_rational(value.a) + sqrt_as_cyclo(value.c) * value.b
        return result if n is None else result.embed(n)

    # ----- structure -----

    @property
    def degree(self) -> int:
        return len(cyclotomic_coefficients(self.order)) - 1

    def reduced_vector(self) -> Tuple[Fraction, ...]:
        """Coordinates in the power basis 1, zeta, ..., zeta**(phi(n)-1)."""
        return self.coeffs[: self.degree]

    def embed(self, m: int) -> "CycloElem":
        """The same value viewed in Q(zeta_m); requires order | m."""
        if m % self.order:
            raise ValueError(f"cannot embed order {self.order} into order {m}")
        step = m // self.order
        coeffs = [Fraction(0)] * m
        for j, value in enumerate(self.coeffs):
            if value:
                coeffs[j * step] = value
        return CycloElem(m, tuple(coeffs))

    def _lift(self, other: "CycloElem") -> Tuple["CycloElem", "CycloElem"]:
        m = math.lcm(self.order, other.order)
        return self.embed(m), other.embed(m)

    def galois(self, k: int) -> "CycloElem":
        """Apply the automorphism zeta_n -> zeta_n**k."""
        n = self.order
        if math.gcd(k % n, n) != 1:
            raise NonInvertibleGaloisIndex(f"gcd({k}, {n}) != 1")
        coeffs = [Fraction(0)] * n
        for j, value in enumerate(self.coeffs):
            if value:
                coeffs[(j * k) % n] += value
        return CycloElem(n, tuple(coeffs))

    def conj(self) -> "CycloElem":
        return self.galois(-1)

    def mul_root(self, exponent: int) -> "CycloElem":
        """Multiply by zeta_n ** exponent."""
        n = self.order
        coeffs = [Fraction(0)] * n
        for j, value in enumerate(self.coeffs):
            if value:
                coeffs[(j + exponent) % n] = value
        return CycloElem(n, tuple(coeffs))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise NotInSubfield("element is not rational")
        return self.coeffs[0]

    # ----- ring operations -----

    def __add__(self, other):
        other = _as_cyclo(other)
        if other is None:
            return NotImplemented
        x, y = self._lift(other)
        return CycloElem(x.order, tuple(u + v for u, v in zip(x.coeffs, y.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycloElem":
        return CycloElem(self.order, tuple(-v for v in self.coeffs))

    def __sub__(self, other):
        other = _as_cyclo(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_cyclo(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElem(self.order, tuple(v * other for v in self.coeffs))
        other = _as_cyclo(other)
        if other is None:
            return NotImplemented
        x, y = self._lift(other)
        n = x.order
        coeffs = [Fraction(0)] * n
        left = [(i, v) for i, v in enumerate(x.coeffs) if v]
        right = [(j, w) for j, w in enumerate(y.coeffs) if w]
        for i, v in left:
            for j, w in right:
                coeffs[(i + j) % n] += v * w
        return CycloElem(n, tuple(coeffs))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        other = _as_cyclo(other)
        if other is None:
            return NotImplemented
        x, y = self._lift(other)
        return x.coeffs == y.coeffs

    __hash__ = None

    def to_complex(self, dps: int = 30):
        """Numerical value as an mpmath complex number (display only)."""
        with mpmath.workdps(dps):
            total = mpmath.mpc(0)
            for j, value in enumerate(self.coeffs):
                if value:
                    total += mpmath.mpf(value.numerator) / value.denominator * mpmath.expjpi(
                        mpmath.mpf(2 * j) / self.order
                    )
            return total

    def __repr__(self) -> str:
        terms = [f"{v}*z{self.order}^{j}" for j, v in enumerate(self.coeffs) if v]
        return f"CycloElem({' + '.join(terms) or '0'})"


def _as_cyclo(value) -> Optional[CycloElem]:
    if isinstance(value, CycloElem):
        return value
    if isinstance(value, (int, Fraction)):
        return CycloElem.from_rational(value)
    return None


def cyclo_arith(x: CycloElem, y: Optional[CycloElem], op: str, k: Optional[int] = None):
    """Dispatch one of add, mul, galois, equal."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "galois":
        return x.galois(k)
    if op == "equal":
        return x == y
    raise ValueError(f"unknown cyclotomic operation '{op}'")


@lru_cache(maxsize=None)
def sqrt_as_cyclo(c: int) -> CycloElem:
    """
    sqrt(c) inside Q(zeta_D), D the discriminant of Q(sqrt c), built from quadratic Gauss sums.

    For an odd prime p the Gauss sum g_p equals sqrt(p) when p = 1 mod 4 and i*sqrt(p)
    otherwise, so the product over the odd primes of c is i**m * sqrt(c_odd) with m the number
    of primes = 3 mod 4; sqrt(2) = zeta_8 + zeta_8**7.
    """
    if c < 0:
        raise ValueError(f"radicand must be nonnegative, got {c}")
    if c <= 1:
        return CycloElem.from_rational(c)
    c, m = squarefree_part(c)
    odd_primes = [p for p in sorted(factorint(c)) if p != 2]
    result = CycloElem.from_rational(m)
    for p in odd_primes:
        result = result * CycloElem(p, tuple([0] + [legendre_symbol(a, p) for a in range(1, p)]))
    minus = sum(1 for p in odd_primes if p % 4 == 3)
    if minus % 2:
        result = result * CycloElem.root(4, (-minus) % 4)
    elif minus % 4:
        result = -result
    if c % 2 == 0:
        result = result * (CycloElem.root(8, 1) + CycloElem.root(8, 7))
    return result


# ============= Galois group of Q(zeta_n) =============

def _primitive_root_prime_power(p: int, e: int) -> int:
    g = int(primitive_root(p))
    if e > 1 and pow(g, p - 1, p * p) == 1:
        g += p
    return g


@lru_cache(maxsize=None)
def unit_group_generators(n: int) -> Tuple[int, ...]:
    """A generating set of (Z/n)^*, assembled prime power by prime power through CRT."""
    if n <= 2:
        return ()
    generators = []
    for p, e in sorted(factorint(n).items()):
        q = p ** e
        rest = n // q
        local = []
        if p == 2:
            if e >= 2:
                local.append(q - 1)
            if e >= 3:
                local.append(5)
        else:
            local.append(_primitive_root_prime_power(p, e))
        for g in local:
            generators.append(int(crt([q, rest], [g, 1])[0]) % n if rest > 1 else g % n)
    return tuple(generators)


@lru_cache(maxsize=None)
def sqrt_fixing_generators(n: int, c: int) -> Tuple[int, ...]:
    """
    Generators of Gal(Q(zeta_n)/Q(sqrt c)) as exponents k (zeta -> zeta**k).

    When sqrt(c) does not lie in Q(zeta_n) the whole group fixes it.
    """
    generators = unit_group_generators(n)
    if c <= 1 or n % quadratic_discriminant(squarefree_part(c)[0]):
        return generators
    root = sqrt_as_cyclo(c).embed(n)
    flips = [g for g in generators if root.galois(g) != root]
    kept = [g for g in generators if g not in flips]
    if flips:
        first = flips[0]
        kept += [(g * first) % n for g in flips[1:]]
        kept.append((first * first) % n)
    return tuple(sorted(set(kept)))


def orbit_of(exponent: int, n: int, generators: Sequence[int]) -> Tuple[int, ...]:
    """Orbit of an exponent mod n under multiplication by the given units."""
    seen = {exponent % n}
    frontier = [exponent % n]
    while frontier:
        current = frontier.pop()
        for g in generators:
            image = (current * g) % n
            if image not in seen:
                seen.add(image)
                frontier.append(image)
    return tuple(sorted(seen))


def cyclo_to_quad(x: CycloElem, c: int) -> QuadVal:
    """
    Express a cyclotomic element as a + b*sqrt(c).

    Membership is decided by invariance under generators of Gal(Q(zeta_m)/Q(sqrt c)), then
    a and b are solved exactly from the power-basis coordinates.

    Raises:
        NotInSubfield: x does not lie in Q(sqrt c)
    """
    if x.is_rational():
        return QuadVal(x.rational_value())
    if c <= 1:
        raise NotInSubfield("element is not rational")
    radicand = squarefree_part(c)[0]
    if radicand == 1:
        raise NotInSubfield("element is not rational")
    root = sqrt_as_cyclo(radicand)
    m = math.lcm(x.order, root.order)
    x_m, root_m = x.embed(m), root.embed(m)
    for k in sqrt_fixing_generators(m, radicand):
        if x_m.galois(k) != x_m:
            raise NotInSubfield(f"element is moved by zeta -> zeta^{k}, so it is not in Q(√{radicand})")
    pivot = next(j for j in range(1, m) if root_m.coeffs[j])
    b = x_m.coeffs[pivot] / root_m.coeffs[pivot]
    a = x_m.coeffs[0] - b * root_m.coeffs[0]
    if x_m != root_m * b + a:
        raise NotInSubfield(f"element is not in Q(√{radicand})")
    return QuadVal(a, b, radicand)


# ============= Q(sqrt c)(zeta_N) =============

@dataclass(frozen=True)
class QuadCycloField:
    """
    The compositum Q(sqrt c)(zeta_N) for sqrt(c) outside Q(zeta_N).

    Elements are pairs (u, v) meaning u + v*sqrt(c) with u, v in Q(zeta_N); since 1 and
    sqrt(c) are independent over Q(zeta_N) the pair is unique.
    """

    c: int
    order: int

    def __post_init__(self):
        radicand = squarefree_part(self.c)[0] if self.c > 1 else 0
        if radicand > 1 and self.order % quadratic_discriminant(radicand) == 0:
            raise ValueError(f"√{radicand} lies in Q(zeta_{self.order}); use CycloElem instead")
        object.__setattr__(self, "c", radicand)

    def element(self, rational_part: CycloElem, radical_part: Optional[CycloElem] = None) -> "QuadCyclo":
        radical_part = radical_part if radical_part is not None else CycloElem.from_rational(0)
        return QuadCyclo(self, rational_part.embed(self.order), radical_part.embed(self.order))

    def from_quad(self, value) -> "QuadCyclo":
        value = as_quad(value)
        if value.c not in (0, self.c):
            raise MixedRadicands(f"√{value.c} is not in Q(√{self.c})")
        return self.element(CycloElem.from_rational(value.a), CycloElem.from_rational(value.b))

    def root(self, exponent: int) -> "QuadCyclo":
        return self.element(CycloElem.root(self.order, exponent))

    def roots(self) -> List["QuadCyclo"]:
        return [self.root(j) for j in range(self.order)]


@dataclass(frozen=True, eq=False)
class QuadCyclo:
    field: QuadCycloField
    rational_part: CycloElem
    radical_part: CycloElem

    def _check(self, other: "QuadCyclo") -> None:
        if other.field != self.field:
            raise MixedRadicands("elements of different fields")

    def __add__(self, other: "QuadCyclo") -> "QuadCyclo":
        self._check(other)
        return QuadCyclo(self.field, self.rational_part + other.rational_part, self.radical_part + other.radical_part)

    def __neg__(self) -> "QuadCyclo":
        return QuadCyclo(self.field, -self.rational_part, -self.radical_part)

    def __sub__(self, other: "QuadCyclo") -> "QuadCyclo":
        return self + (-other)

    def __mul__(self, other: "QuadCyclo") -> "QuadCyclo":
        self._check(other)
        return QuadCyclo(
            self.field,
            self.rational_part * other.rational_part + self.radical_part * other.radical_part * self.field.c,
            self.rational_part * other.radical_part + self.radical_part * other.rational_part,
        )

    def is_zero(self) -> bool:
        return self.rational_part.is_zero() and self.radical_part.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadCyclo):
            return NotImplemented
        return self.field == other.field and (self - other).is_zero()

    __hash__ = None


# ============= Integer polynomials =============

@dataclass(frozen=True)
class IntPoly:
    """Integer polynomial, coefficients lowest degree first, no trailing zeros."""

    coefficients: Tuple[int, ...]

    def __post_init__(self):
        coeffs = [int(v) for v in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, t):
        result = 0
        for coefficient in reversed(self.coefficients):
            result = result * t + coefficient
        return result

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple(j * v for j, v in enumerate(self.coefficients) if j))

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if not self.coefficients or not other.coefficients:
            return IntPoly(())
        product = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, u in enumerate(self.coefficients):
            for j, v in enumerate(other.coefficients):
                product[i + j] += u * v
        return IntPoly(tuple(product))

    def divmod_monic(self, divisor: "IntPoly") -> Tuple["IntPoly", "IntPoly"]:
        """Long division by a monic integer polynomial."""
        if not divisor.coefficients or divisor.coefficients[-1] != 1:
            raise ValueError("divisor must be monic")
        remainder = list(self.coefficients)
        shift = len(remainder) - len(divisor.coefficients)
        if shift < 0:
            return IntPoly(()), IntPoly(tuple(remainder))
        quotient = [0] * (shift + 1)
        for s in range(shift, -1, -1):
            lead = remainder[s + divisor.degree]
            quotient[s] = lead
            if lead:
                for i, d in enumerate(divisor.coefficients):
                    remainder[s + i] -= lead * d
        return IntPoly(tuple(quotient)), IntPoly(tuple(remainder))

    def to_sympy(self) -> Poly:
        return Poly(list(reversed(self.coefficients)) or [0], _T)

    @classmethod
    def from_sympy(cls, poly) -> "IntPoly":
        return cls(tuple(int(v) for v in reversed(poly.all_coeffs())))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> "IntPoly":
        result = cls((1,))
        for r in roots:
            result = result * cls((-r, 1))
        return result

    def __str__(self) -> str:
        return str(self.to_sympy().as_expr())


def char_poly(matrix) -> IntPoly:
    """
    Exact characteristic polynomial det(t*I - M) of an integer matrix (Berkowitz, via sympy).

    Args:
        matrix: Square integer matrix (nested lists or numpy array)

    Returns:
        Monic IntPoly
    """
    rows = [[int(v) for v in row] for row in np.asarray(matrix, dtype=object).tolist()]
    sym = Matrix(rows)
    if sym.rows != sym.cols:
        raise ShapeMismatch(f"characteristic polynomial of a {sym.rows}x{sym.cols} matrix")
    return IntPoly.from_sympy(sym.charpoly(_T))


def quadratic_roots(alpha: int, beta: int) -> Tuple[QuadVal, QuadVal]:
    """Real roots of t**2 - alpha*t + beta, larger first."""
    discriminant = alpha * alpha - 4 * beta
    if discriminant < 0:
        raise ComplexRoots(f"t^2 - {alpha}t + {beta} has no real roots")
    if discriminant == 0:
        root = QuadVal(Fraction(alpha, 2))
        return root, root
    c, m = squarefree_part(discriminant)
    return QuadVal(Fraction(alpha, 2), Fraction(m, 2), c), QuadVal(Fraction(alpha, 2), Fraction(-m, 2), c)


def factor_with_known_double_root(poly: IntPoly, gamma: int) -> Tuple[int, int]:
    """
    Split a monic quartic as (t - gamma)**2 * (t**2 - alpha*t + beta).

    Args:
        poly: Monic quartic
        gamma: Claimed double root

    Returns:
        Tuple (alpha, beta)

    Raises:
        NotADoubleRoot: poly(gamma) or poly'(gamma) is nonzero
    """
    if poly.degree != 4 or poly.coefficients[-1] != 1:
        raise NotADoubleRoot(f"expected a monic quartic, got degree {poly.degree}")
    if poly(gamma) != 0 or poly.derivative()(gamma) != 0:
        raise NotADoubleRoot(f"{gamma} is not a double root of {poly}")
    quotient, remainder = poly.divmod_monic(IntPoly((gamma * gamma, -2 * gamma, 1)))
    if remainder.coefficients:
        raise NotADoubleRoot(f"nonzero remainder dividing by (t - {gamma})^2")
    beta, minus_alpha, _ = quotient.coefficients
    return -minus_alpha, beta


def _low_degree_roots(factor) -> List[QuadVal]:
    """Real roots of an irreducible sympy factor of degree 1 or 2."""
    coeffs = [int(v) for v in factor.all_coeffs()]
    if len(coeffs) == 2:
        lead, constant = coeffs
        return [QuadVal(Fraction(-constant, lead))]
    lead, middle, constant = coeffs
    discriminant = middle * middle - 4 * lead * constant
    if discriminant < 0:
        return []
    c, m = squarefree_part(discriminant)
    return [QuadVal(Fraction(-middle, 2 * lead), Fraction(s * m, 2 * lead), c) for s in (1, -1)]


def real_roots(poly: IntPoly) -> List[QuadVal]:
    """
    Real roots with multiplicity, largest first, of a polynomial whose irreducible factors
    over Q have degree at most 2 (complex quadratic factors are skipped).

    Raises:
        EigenvalueDegreeTooHigh: an irreducible factor of degree > 2 occurs
    """
    roots: List[QuadVal] = []
    _, factors = poly.to_sympy().factor_list()
    for factor, multiplicity in factors:
        if factor.degree() > 2:
            raise EigenvalueDegreeTooHigh(f"irreducible factor of degree {factor.degree()}: {factor.as_expr()}")
        if factor.degree() > 0:
            roots += _low_degree_roots(factor) * multiplicity
    return sort_descending(roots)


def _rational(value) -> Fraction:
    return Fraction(int(value.p), int(value.q))


def perron_root(poly: IntPoly) -> QuadVal:
    """
    Largest real root of an integer polynomial, exactly.

    Factors of degree > 2 are allowed as long as their real roots stay below the largest root
    of the linear and quadratic factors. Distinct irreducible factors share no root, so their
    isolating intervals are refined until they separate from that candidate.

    Raises:
        EigenvalueDegreeTooHigh: the largest real root belongs to a factor of degree > 2
        ComplexRoots: the polynomial has no real root
    """
    exact: List[QuadVal] = []
    high = []
    _, factors = poly.to_sympy().factor_list()
    for factor, _ in factors:
        if factor.degree() > 2:
            high.append(factor)
        elif factor.degree() > 0:
            exact += _low_degree_roots(factor)
    best = sort_descending(exact)[0] if exact else None

    for factor in high:
        intervals = factor.intervals()
        if not intervals:
            continue
        (lo, hi), _ = max(intervals, key=lambda item: item[0][1])
        if best is None:
            raise EigenvalueDegreeTooHigh(f"largest real root lies in {factor.as_expr()}")
        while QuadVal(_rational(lo)) <= best <= QuadVal(_rational(hi)):
            lo, hi = factor.refine_root(lo, hi, eps=(hi - lo) / 16)
        if best < QuadVal(_rational(lo)):
            raise EigenvalueDegreeTooHigh(f"largest real root lies in {factor.as_expr()}")

    if best is None:
        raise ComplexRoots(f"{poly} has no real root")
    return best
