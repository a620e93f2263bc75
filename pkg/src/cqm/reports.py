"""Verification reports shared by the law checkers."""

from dataclasses import dataclass, field

from .finrel import elem_key


def freeze_key(x):
    """Sort key for nested report data."""
    return elem_key(_freeze(x))


@dataclass
class VerificationReport:
    passed: bool
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_json(self):
        return {"pass": self.passed, "failures": self.failures, "details": self.details}


def make_report(failures, **details):
    """A report whose failures are sorted into a canonical order."""
    failures = sorted(failures, key=lambda f: freeze_key(f))
    return VerificationReport(not failures, failures, details)


def _freeze(obj):
    """Hashable, orderable image of nested report data."""
    if isinstance(obj, dict):
        return tuple((k, _freeze(obj[k])) for k in sorted(obj))
    if isinstance(obj, (list, tuple)):
        return tuple(_freeze(x) for x in obj)
    if obj is None:
        return "None"
    if isinstance(obj, bool):
        return str(obj)
    return obj
