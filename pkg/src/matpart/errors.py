"""Exception hierarchy shared by every matpart module."""

from __future__ import annotations


class MatpartError(Exception):
    """Base class for all library errors."""


class InvalidArgument(MatpartError, ValueError):
    pass


class Unsupported(MatpartError):
    """No algorithm is available for the requested problem or input size."""


class InfeasibleInstance(MatpartError):
    """The instance admits no feasible partition under the requested policy."""


class AxiomViolation(MatpartError):
    """An oracle behaved in a way no matroid can."""


class BudgetExceeded(MatpartError):
    pass


class ParseError(MatpartError):
    """Malformed instance input. ``pointer`` is a JSON pointer to the bad node."""

    def __init__(self, pointer: str, message: str):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
        self.message = message
