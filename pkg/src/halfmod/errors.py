"""Exception types shared across the package."""


class HalfmodError(Exception):
    """Base class for all package errors."""


class NotPIntegral(HalfmodError, ValueError):
    """A rational value (or series) has a denominator divisible by p."""


class RingMismatch(HalfmodError, TypeError):
    pass


class NonUnitLeading(HalfmodError, ZeroDivisionError):
    pass


class FractionalExponent(HalfmodError, ValueError):
    """An eta quotient whose leading exponent is not an integer."""


class NonIntegralScalar(HalfmodError, ValueError):
    pass


class NonSquarefree(HalfmodError, ValueError):
    pass


class InsufficientPrecision(HalfmodError, ValueError):
    pass


class InvalidDiscriminant(HalfmodError, ValueError):
    pass


class NotReduced(HalfmodError, ValueError):
    pass


class PrecisionLoss(HalfmodError, ArithmeticError):
    pass


class RoundingAmbiguous(HalfmodError, ArithmeticError):
    pass


class NonIntegral(HalfmodError, ArithmeticError):
    pass


class InvalidArgument(HalfmodError, ValueError):
    pass


class HurwitzUnreachable(InvalidArgument):
    """H(-n) is not determined by r3 alone (n = 4^k m with m = 7 mod 8)."""


class TooLarge(HalfmodError, ValueError):
    pass
