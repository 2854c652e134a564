"""Exception hierarchy shared across the package."""

from __future__ import annotations


class LeagueLedgerError(Exception):
    """Base class for every error raised by league_ledger."""


class InvariantError(LeagueLedgerError, ValueError):
    """A domain object was constructed in violation of one of its rules.

    ``rule`` carries a short, stable identifier of the violated rule so that
    callers (and tests) can tell violations apart without parsing messages.
    """

    def __init__(self, rule: str, message: str) -> None:
        super().__init__(f"{rule}: {message}")
        self.rule = rule


class InvalidName(LeagueLedgerError, ValueError):
    pass


class SchemaError(LeagueLedgerError):
    pass


class SnapshotReadError(LeagueLedgerError, OSError):
    pass


class EmptySnapshot(LeagueLedgerError):
    pass


class EmptyInput(LeagueLedgerError, ValueError):
    pass


class UndefinedScore(LeagueLedgerError, ValueError):
    pass


class MethodMismatch(LeagueLedgerError, ValueError):
    pass


class InsufficientOverlap(LeagueLedgerError, ValueError):
    pass


class StoreError(LeagueLedgerError):
    """A file inside a snapshot store could not be loaded.

    The offending path is kept on ``path`` and repeated in the message.
    """

    def __init__(self, path, cause: Exception) -> None:
        super().__init__(f"{path}: {cause}")
        self.path = path
        self.cause = cause
