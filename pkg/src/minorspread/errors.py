"""Exception hierarchy shared by every module."""

from __future__ import annotations


class MinorSpreadError(Exception):
    """Base class for all package errors."""


class DomainError(MinorSpreadError, ValueError):
    """Arguments outside the documented domain of an operation."""


class UnsupportedSizeError(DomainError):
    """Graph order beyond what an operation is built to handle."""


class Graph6Error(MinorSpreadError, ValueError):
    """Malformed graph6 input.

    ``offset`` is the 0-based byte position of the offending character, or the
    position where a missing byte was expected. ``line`` is filled in by stream
    readers.
    """

    def __init__(self, message: str, offset: int | None = None, line: int | None = None):
        self.offset = offset
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte {offset}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.message = message


class NumericalError(MinorSpreadError, ArithmeticError):
    """An iterative numerical routine failed to reach its tolerance."""

    def __init__(self, message: str, achieved: float | None = None, state: object = None):
        super().__init__(message)
        self.achieved = achieved
        self.state = state


class SeriesDivergenceError(DomainError):
    """The truncated Laurent series is not guaranteed to converge for this model."""
