"""Exception hierarchy shared by every module."""

from __future__ import annotations


class WasyncError(Exception):
    """Base class for all errors raised by this package."""


class InputError(WasyncError, ValueError):
    """Invalid arguments: bad indices, unmet preconditions, wrong automaton kind."""


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceError(WasyncError):
    """A search budget or capacity cap was hit; the answer is unknown, not "no"."""

    def __init__(self, message: str, limit: int | None = None):
        self.limit = limit
        super().__init__(message)
