"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when an input violates a documented domain constraint.

    The CLI maps this to exit code 1.
    """
