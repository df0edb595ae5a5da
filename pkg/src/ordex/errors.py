from __future__ import annotations


class OrdexError(Exception):
    pass


class CapExceeded(OrdexError, ValueError):
    """An enumeration would exceed its configured size bound."""


class ConstraintError(OrdexError, ValueError):
    """An (Y, T) constraint is malformed or incompatible with the relation."""

    def __init__(self, message: str, pair: tuple[str, str] | None = None):
        super().__init__(message)
        self.pair = pair


class PreconditionFailed(OrdexError):
    """A mathematical precondition does not hold for the given input.

    ``witness`` carries whatever certifies the failure (a cycle, a pair, ...).
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InputError(OrdexError, ValueError):
    """Malformed input file; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line
