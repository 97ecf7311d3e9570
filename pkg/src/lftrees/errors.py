"""Exception hierarchy shared across the package."""


class LFTreesError(Exception):
    """Base class for errors raised by this package."""


class DivisionByZero(LFTreesError, ZeroDivisionError):
    pass


class ModulusMismatch(LFTreesError, ValueError):
    pass


class NotPrime(LFTreesError, ValueError):
    pass


class ParseError(LFTreesError, ValueError):
    """Syntax error in an expression, word, or matrix string."""

    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class NotIrreducible(LFTreesError, ValueError):
    pass


class UnsupportedPlace(LFTreesError, ValueError):
    """Operation needs a place whose residue field is F_p."""


class PlaceMismatch(LFTreesError, ValueError):
    pass


class ZeroParameter(LFTreesError, ValueError):
    pass


class DegenerateXY(LFTreesError, ValueError):
    pass


class SingularMatrix(LFTreesError, ZeroDivisionError):
    pass


class NotUnimodular(LFTreesError, ValueError):
    pass


class NotElliptic(LFTreesError, ValueError):
    pass


class NotAlternating(LFTreesError, ValueError):
    pass


class NotNegative(LFTreesError):
    """Some trace has nonnegative valuation, so the element is elliptic."""


class NotEqual(LFTreesError):
    """Trace valuations are negative but unequal; outside the certified criterion."""


class NotFound(LFTreesError):
    pass


class TrivialWord(LFTreesError, ValueError):
    pass


class FamilyMismatch(LFTreesError, ValueError):
    pass


class CertificationError(LFTreesError):
    """A certificate pipeline failed; ``stage`` names the step."""

    def __init__(self, stage: str, cause: Exception | str):
        self.stage = stage
        self.cause = cause
        super().__init__(f"[{stage}] {cause}")
