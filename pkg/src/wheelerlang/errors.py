"""Exception hierarchy shared by every module."""


class WheelerError(Exception):
    """Base class for all errors raised by this package."""


class InputError(WheelerError, ValueError):
    """Malformed input: unknown symbols, bad orders, unparsable files."""


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(WheelerError):
    """An operation was called on an automaton that violates its precondition."""

    def __init__(self, message, kind=None):
        self.kind = kind
        super().__init__(message)


class ResourceBudgetExceeded(WheelerError):
    """A search would exceed its configured node or memory budget."""


class InternalInconsistency(WheelerError, AssertionError):
    """A structural invariant failed; always an implementation bug."""
