"""Exception types shared by every module in the package."""


class KeeError(Exception):
    """Base class for all package errors."""


class DomainError(KeeError, ValueError):
    """An input lies outside the documented mathematical domain."""


class RangeError(KeeError, ValueError):
    """A query falls outside the hull covered by a tabulated map."""


class QuadratureError(KeeError, RuntimeError):
    """A numerical integration failed to meet its target tolerance."""


class PositivityError(KeeError, RuntimeError):
    """A metric evaluation produced a non positive-definite form.

    Positivity holds identically on the open surface, so hitting this
    signals a bug (or a deliberately inconsistent profile), never a
    legitimate input condition.
    """


class UsageError(KeeError, ValueError):
    """Command-line arguments could not be interpreted."""
