"""Exception types shared across the package.

Every error raised on purpose derives from :class:`SumRankError` so the CLI
can map failures to stable exit codes (parameter problems vs resource limits).
"""


class SumRankError(Exception):
    """Base class for all errors raised by this package."""


# field construction / arithmetic
class EvenCharacteristic(SumRankError):
    """Characteristic 2 requested; only odd q is supported."""


class NotPrime(SumRankError):
    """The given characteristic is not prime."""


class ReducibleModulus(SumRankError):
    """The supplied extension modulus is not irreducible (or not monic of the right degree)."""


class FieldTooLarge(SumRankError):
    """Field order exceeds the configured cap."""


class DivisionByZero(SumRankError, ZeroDivisionError):
    """Inversion or division by the zero element."""


# polynomials / rational functions
class BothZero(SumRankError):
    """gcd(0, 0) requested."""


class ZeroPolynomial(SumRankError):
    """Operation undefined for the zero polynomial."""


class ZeroDenominator(SumRankError):
    """Rational function with zero denominator."""


# elliptic function field
class NotCubic(SumRankError):
    """Curve right-hand side must have degree exactly 3."""


class NotSquareFree(SumRankError):
    """Curve right-hand side must be square-free."""


class InvalidK(SumRankError):
    """Riemann-Roch pole bound must be a positive integer."""


class InvalidRange(SumRankError):
    """Pole-order slice bounds must satisfy 1 <= k1 < k."""


class NotSplit(SumRankError):
    """Affine Riemann-Roch basis requested over a non-split base place."""


class PrecisionExhausted(SumRankError):
    """Local expansion could not resolve a leading term at the requested precision."""


# code constructions
class ParameterViolation(SumRankError):
    """A code-construction constraint failed; the message names the constraint."""


class NotSplitPlace(SumRankError):
    """Construction 2 requires a completely split base place."""


class PlaceCollision(SumRankError):
    """Evaluation places must avoid the pole place."""


class LengthMismatch(SumRankError):
    """Message vector length does not match the code dimension."""


class PoleAtEvaluationPlace(SumRankError):
    """A matrix entry has a pole at the requested evaluation place."""


# weight enumeration
class TooLarge(SumRankError):
    """Message space exceeds the enumeration limit."""
