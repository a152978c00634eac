"""Exception types raised across the package."""


class NotLimitError(Exception):
    """Base class for all package errors."""


class ShapeError(NotLimitError, ValueError):
    """Array dimensions do not fit the requested operation."""


class ValidationError(NotLimitError, ValueError):
    """A numerical invariant (unitarity, normalization, hermiticity) failed."""


class CapacityError(NotLimitError, ValueError):
    """A dense representation would exceed the configured size limit."""


class DomainError(NotLimitError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""
