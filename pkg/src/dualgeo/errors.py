"""Exception hierarchy shared by every module."""


class DualGeoError(Exception):
    """Base class for all library errors."""


class ValidationError(DualGeoError, ValueError):
    """An input violates a type invariant (non-finite value, zero parameter...)."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class NumericRangeError(DualGeoError, ArithmeticError):
    """A transform produced a non-finite result."""


class DegenerateInputError(DualGeoError, ValueError):
    pass


class EmptyInputError(DualGeoError, ValueError):
    pass


class DimensionMismatchError(DualGeoError, ValueError):
    pass


class InvalidPolygonError(DualGeoError, ValueError):
    pass


class DuplicateSiteError(DualGeoError, ValueError):
    pass


class InvariantFailure(DualGeoError, AssertionError):
    """An internal consistency check failed; maps to CLI exit status 3."""
