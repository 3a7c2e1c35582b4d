"""Error types shared across the package.

Every domain error derives from :class:`CubicError` so the CLI can map it to
a single exit path while still reporting the concrete class name.
"""


class CubicError(Exception):
    """Base class for all domain errors raised by cubicdyn."""


class ZeroDenominator(CubicError, ZeroDivisionError):
    """A rational expression needed division by an exact zero."""


class ZeroValueDivision(ZeroDenominator):
    """Division by a jet whose value part is zero."""


class PolarLocus(ZeroDenominator):
    """The point lies on the polar set of a birational map."""


class ChartDegenerate(ZeroDenominator):
    """A chart coordinate or its inverse is undefined at the point."""


class DivisionFailure(CubicError):
    """Laurent division was not exact; ``remainder`` holds the leftover."""

    def __init__(self, remainder, message="division is not exact in the Laurent ring"):
        super().__init__(message)
        self.remainder = remainder


class SamplerExhausted(CubicError):
    pass


class NotOnSurface(CubicError):
    pass


class NonGenericParams(CubicError):
    pass


class NonGenericPoint(CubicError):
    pass


class DegenerateConfiguration(CubicError):
    pass


class Irreducible(CubicError):
    """A conic does not split into rational lines.

    ``splits`` is True when the conic is degenerate but its factors need an
    irrational square root.
    """

    def __init__(self, message, splits=False):
        super().__init__(message)
        self.splits = splits


class IrrationalSplitting(Irreducible):
    pass


class SingularSystem(CubicError):
    pass


class ZeroCorner(CubicError):
    pass


class ReduciblePair(CubicError):
    pass


class IrrationalEigenvector(CubicError):
    pass


class NonGeneric(CubicError):
    pass


class UnknownChart(CubicError, KeyError):
    pass


class NotSingular(CubicError):
    pass


class NonGenericAlpha(CubicError):
    pass


class PoleHit(ZeroDenominator):
    pass


class ParseError(CubicError, ValueError):
    pass


class UnknownSuite(CubicError, KeyError):
    pass
