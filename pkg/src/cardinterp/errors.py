"""Exception types shared across the package."""


class CardinterpError(Exception):
    """Base class for all package errors."""


class InvalidSpecError(CardinterpError):
    """Family parameters violate the supported constraints."""


class DomainError(CardinterpError):
    """Argument outside the mathematical or accuracy domain of an operation."""


class AccuracyError(CardinterpError):
    """Requested tolerance could not be met within the configured budget."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class TruncationError(CardinterpError):
    """Lattice-sum truncation too aggressive for the requested accuracy."""

    def __init__(self, message, required_j=None):
        super().__init__(message)
        self.required_j = required_j


class GridError(CardinterpError):
    """Frequency grid malformed or incompatible with the operation."""
