"""Exception types shared across the package."""


class InputError(ValueError):
    """Raised when an operation receives arguments outside its contract."""
