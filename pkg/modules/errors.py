"""
Error Types
Exception hierarchy shared by the exact-arithmetic layer, the ring model and the obstructions
"""


class FuscatError(Exception):
    """Base class for every error raised by fuscat."""


class MixedRadicands(FuscatError, ValueError):
    """Operands live in different real quadratic fields."""


class DivisionByZero(FuscatError, ZeroDivisionError):
    pass


class NonInvertibleGaloisIndex(FuscatError, ValueError):
    """galois(k) was requested with gcd(k, n) != 1."""


class NotInSubfield(FuscatError, ValueError):
    """A cyclotomic element does not lie in the requested quadratic field."""


class NotADoubleRoot(FuscatError):
    """The supplied gamma is not a double root of the characteristic polynomial."""


class EigenvalueDegreeTooHigh(FuscatError):
    """A required eigenvalue is not rational or quadratic."""


class ShapeMismatch(FuscatError, ValueError):
    """Structure-constant tensor does not match the declared rank."""


class ConstraintViolation(FuscatError, ValueError):
    """Family parameters violate their constraint system."""


class NoSolution(FuscatError):
    """No family coordinates reproduce the given parameters."""


class HypothesisViolation(FuscatError, ValueError):
    """A bound was requested outside the hypotheses it is proved under."""


class ComplexRoots(FuscatError, ValueError):
    """A quadratic factor has negative discriminant where real roots are required."""
