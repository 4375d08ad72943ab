"""Exception types shared across the package."""


class CapacityError(RuntimeError):
    """A count or matrix exceeds the configured size limit."""


class InvalidSplittingError(ValueError):
    """A degree splitting ``(e0, e1)`` violates its invariants."""


class RangeError(ValueError):
    """Family parameters lie outside the range where the family is proven."""


class ShapeMismatchError(ValueError):
    """Inputs do not have the shape an operation is restricted to."""
