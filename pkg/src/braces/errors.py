"""Exception types shared across the package."""


class BraceError(Exception):
    pass


class InvalidArgument(BraceError, ValueError):
    pass


class PreconditionError(BraceError, ValueError):
    pass


class ResourceLimitError(BraceError, RuntimeError):
    """Raised when an exhaustive enumeration would exceed its size bound."""
