"""Exception types shared across the package."""


class GouprocError(Exception):
    """Base class for errors raised by this package."""


class NumericError(GouprocError):
    """A numerical routine failed to reach its accuracy target.

    Carries the best value computed so far in ``partial`` when one exists
    (e.g. a truncated series sum), so callers can inspect how far the
    computation got.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class DegeneracyError(GouprocError, ValueError):
    """Input data is degenerate for the requested statistic.

    Raised when a sample has zero spread, a characteristic-function mean
    has vanishing modulus, or a quantile ratio has a zero denominator.
    """
