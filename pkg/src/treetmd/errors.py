"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class TreeTmdError(Exception):
    """Base class for every error raised by this package."""


class InvalidVertexError(TreeTmdError, ValueError):
    """A vertex or sensor id is outside 0..n-1."""


class TreeFormatError(TreeTmdError, ValueError):
    """Edge data does not describe a tree (parse error, cycle, duplicate, disconnected)."""


class GuardExceededError(TreeTmdError, ValueError):
    """An input is larger than an exhaustive routine is allowed to handle."""


class PreconditionError(TreeTmdError, ValueError):
    """A rewrite was requested on an input that does not satisfy its preconditions."""


class PlanMismatchError(TreeTmdError, ValueError):
    """A transform plan was applied to a tree other than the one it was computed for."""


class BoundViolationError(TreeTmdError, AssertionError):
    """A lower bound exceeded an exact value during a sweep."""
