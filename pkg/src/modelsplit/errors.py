"""Exception hierarchy shared by every module."""

from __future__ import annotations


class ModelSplitError(Exception):
    """Base class for all domain errors raised by this package."""


class ScopeError(ModelSplitError):
    """A coordinate set does not fit the scope an operation requires."""


class PartitionError(ModelSplitError):
    """Blocks overlap, are empty, or fail to cover the requested scope."""


class NoCompletionError(ModelSplitError):
    """An assignment has no extension inside a model set."""


class EmptyModelSetError(ModelSplitError):
    """An operation needed a witness from a model set that has none."""


class RevisionError(ModelSplitError):
    """Revision is undefined because the prior or the input has no models."""


class RecodingError(ModelSplitError):
    """A set of variable definitions does not induce a bijection.

    ``collision`` holds two distinct source assignments with the same image.
    """

    def __init__(self, message: str, collision=None):
        super().__init__(message)
        self.collision = collision


class ParseError(ModelSplitError):
    """Malformed textual input.

    ``position`` is a character offset for formulas and a 1-based line
    number for line-oriented file formats (see ``line``).
    """

    def __init__(self, message: str, position: int | None = None, line: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"offset {position}")
        super().__init__(f"{message} at {', '.join(where)}" if where else message)
        self.message = message
        self.position = position
        self.line = line


class ResourceLimitError(ModelSplitError):
    """An exhaustive computation would exceed a configured size bound."""
