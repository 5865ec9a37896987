"""Exception types shared across the package."""


class CCXError(Exception):
    """Base class for all package errors."""


class InvalidInputError(CCXError, ValueError):
    """Malformed document or argument violating a documented precondition."""


class ResourceCapError(CCXError):
    """A configured size or enumeration cap was exceeded."""

    def __init__(self, message, cap=None, detail=None):
        super().__init__(message)
        self.cap = cap
        self.detail = detail


class NotMedianError(InvalidInputError):
    """A graph failed the median-graph test.

    ``witness`` holds the offending vertex triple, or for the convexity
    variant the edge whose wall bipartition is not convex.
    """

    def __init__(self, message, witness):
        super().__init__(message)
        self.witness = witness


class InternalConsistencyError(CCXError, AssertionError):
    """Two computations that must agree did not; indicates a bug."""
