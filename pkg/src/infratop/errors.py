"""Exception hierarchy shared by every module of the package."""
from __future__ import annotations


class InfraError(Exception):
    """Base class for all errors raised by infratop."""


class DuplicateLabel(InfraError):
    def __init__(self, label: str):
        super().__init__(f"duplicate label {label!r}")
        self.label = label


class UnknownLabel(InfraError):
    def __init__(self, label: str):
        super().__init__(f"unknown label {label!r}")
        self.label = label


class UniverseMismatch(InfraError):
    pass


class UniverseTooLarge(InfraError):
    pass


class FlagMismatch(InfraError):
    pass


class BoundsTooLarge(InfraError):
    pass


class FormatError(InfraError):
    """A JSON input file does not follow its schema."""
