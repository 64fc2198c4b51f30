"""Shared exception types."""


class ZeroModule(ValueError):
    """Operation requires a nonzero module."""


class NotSupported(ValueError):
    """Representation type outside the supported classes."""


class ProjectiveInput(ValueError):
    """AR translate tau is undefined on projectives."""


class InjectiveInput(ValueError):
    """Inverse AR translate is undefined on injectives."""


class IndexOutOfRange(ValueError):
    """Level index outside 0..m."""


class TheoremViolation(AssertionError):
    """Two provably-equal computations disagreed: an implementation bug."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ClosureIncomplete(RuntimeError):
    """The tau-closure node set misses a module the build discovered."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class WindowViolation(AssertionError):
    """A cluster Ext term outside the surviving cases was nonzero."""


class NoComplementFound(RuntimeError):
    """Exhaustive complement search failed: an implementation bug."""


class NotInDomain(ValueError):
    """Module is outside the fundamental domain."""
