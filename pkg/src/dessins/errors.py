"""Shared exception types."""


class DessinsError(Exception):
    """Base class for all domain errors raised by this package."""


class CapExceededError(DessinsError):
    """A size cap was hit; ``size`` carries the offending exact value."""

    def __init__(self, message: str, size):
        super().__init__(message)
        self.size = size
