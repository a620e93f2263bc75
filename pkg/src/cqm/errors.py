"""Exception hierarchy shared by every module."""


class CQMError(Exception):
    """Base class for all workbench errors."""


class DomainMismatch(CQMError):
    """Two boundaries that should agree do not."""

    def __init__(self, left, right, what="composition"):
        self.left = left
        self.right = right
        super().__init__(
            f"{what}: boundary mismatch between {left!r} and {right!r}")


class MembershipError(CQMError, ValueError):
    """An element or subset does not lie in the declared carrier."""


class SizeGuardError(CQMError):
    """An exponential operation was asked to run above its configured bound."""


class InvalidStructure(CQMError, ValueError):
    """Input data violates a structural invariant (coverage, symmetry, ...)."""


class NotTestableError(CQMError):
    """A computed family failed the testability check.

    ``family`` carries the offending family, ``certificate`` the computed
    complements, so callers can report rather than discard the failure.
    """

    def __init__(self, message, family=None, certificate=None):
        super().__init__(message)
        self.family = family
        self.certificate = certificate or {}


class SpecError(CQMError, ValueError):
    """A lax specification or finite category is malformed."""


class CoherenceError(CQMError):
    """A lax specification failed its coherence diagrams."""

    def __init__(self, report):
        self.report = report
        first = report.failures[0] if report.failures else {}
        super().__init__(f"specification is not coherent; first failure: {first}")


class SchemaError(CQMError, ValueError):
    """JSON input does not match the expected schema."""
