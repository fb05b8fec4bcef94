"""Exception hierarchy shared by every module in the package."""


class WildramError(Exception):
    """Base class for all package errors."""


class PrecisionExhausted(WildramError):
    """Not enough 2-adic digits are known to decide the requested quantity.

    Callers are expected to rebuild their inputs at a higher absolute precision
    and retry.
    """


class NotASquare(WildramError):
    pass


class NotAQuadraticField(WildramError):
    """``-t`` is a perfect square (or ``t == 0``), so Q(sqrt(-t)) is not quadratic."""


class DegenerateC(WildramError):
    """Raised for c in {-1, 0}, where the second iterate degenerates."""


class WrongGaloisClass(WildramError):
    pass


class NoRowMatched(WildramError):
    """No classification row accepted the parameter: an internal consistency failure."""


class ResidueDegreeOverflow(WildramError):
    """An unramified step would have pushed the residue degree past 2."""


class NotTotallyRamified(WildramError):
    pass


class StructureConstantMismatch(WildramError):
    """A valuation identity for the uniformizer failed to hold."""

    def __init__(self, quantity: str, expected, observed):
        super().__init__(f"{quantity}: expected {expected}, observed {observed}")
        self.quantity = quantity
        self.expected = expected
        self.observed = observed
