"""Exception and warning types raised across the package."""


class PCError(ValueError):
    """Base class for invalid pairwise-comparison input."""


class BadScale(PCError):
    pass


class NonPositiveValue(PCError):
    pass


class ValueOutOfScale(PCError):
    pass


class MissingPair(PCError):
    pass


class DuplicatePair(PCError):
    pass


class DimensionMismatch(PCError):
    pass


class NotReciprocal(PCError):
    pass


class NotConverged(RuntimeError):
    """Raised when a caller demands a converged Fulop solution and none was found.

    ``solution`` carries the best iterate so callers can still report it.
    """

    def __init__(self, message, solution=None):
        super().__init__(message)
        self.solution = solution


class ConvergenceWarning(UserWarning):
    pass


class ConvexityBoundWarning(UserWarning):
    """Some matrix entry is at or above Fulop's constant; strict convexity is not guaranteed."""
