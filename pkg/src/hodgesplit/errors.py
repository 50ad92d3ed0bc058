"""Exception hierarchy shared by all modules.

Each class maps onto one CLI exit status, see ``hodgesplit.cli``.
"""


class HodgeSplitError(Exception):
    """Base class. ``witness`` carries whatever data pins the failure down."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(HodgeSplitError):
    pass


class DimensionMismatch(HodgeSplitError, ValueError):
    pass


class InvariantError(HodgeSplitError):
    """An input object violates one of its type invariants."""


class RejectionError(HodgeSplitError):
    """Input is well-formed but mathematically unsuitable (e.g. non-unipotent)."""


class InconsistentSystem(HodgeSplitError):
    """A linear system has no solution."""


class TruncationError(HodgeSplitError):
    """A truncated computation did not stabilise."""
