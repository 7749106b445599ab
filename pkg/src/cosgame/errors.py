"""Exception hierarchy.

The CLI maps :class:`ResourceLimitError` to exit status 2 and every other
:class:`CosError` to exit status 1.
"""


class CosError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInputError(CosError, ValueError):
    """Input that does not describe a valid object (bad index, bad syntax)."""


class DomainError(CosError, ValueError):
    """A well-formed argument outside the operation's domain."""


class PreconditionError(CosError, ValueError):
    """A documented precondition does not hold (e.g. a non-simple game)."""


class ResourceLimitError(CosError, RuntimeError):
    """The instance is too large for the requested exact method."""
