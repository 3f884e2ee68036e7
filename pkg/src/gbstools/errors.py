"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class GbsError(ValueError):
    """Base class for domain errors (the CLI maps these to exit status 1)."""


class InvalidGraphError(GbsError):
    pass


class ParseError(GbsError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        prefix = ""
        if source is not None:
            prefix += f"{source}:"
        if line is not None:
            prefix += f"{line}:"
        super().__init__(f"{prefix} {message}" if prefix else message)


class WordError(GbsError):
    pass


class MoveError(GbsError):
    pass


class BallTooLargeError(GbsError):
    pass


class ComplexError(GbsError):
    pass
