"""Exception hierarchy.

Each class carries the CLI exit code it maps to, so the front end never has
to special-case individual error types.
"""

from __future__ import annotations


class FCAError(Exception):
    exit_code = 1


class InvalidArgumentError(FCAError, ValueError):
    exit_code = 2


class ResourceLimitError(FCAError):
    exit_code = 3


class NotClosedError(InvalidArgumentError):
    """A set that must be a concept extent is not closed in its context."""

    exit_code = 4

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"extent #{index} is not closed in the source context")


class ParseError(FCAError, ValueError):
    exit_code = 2

    def __init__(self, line: int, message: str):
        self.line = line
        self.reason = message
        super().__init__(f"line {line}: {message}")


class HeaderError(ParseError):
    pass


class DimensionError(ParseError):
    pass


class CellError(ParseError):
    pass
