"""Exception types shared across the package."""

from __future__ import annotations


class RobustpdError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(RobustpdError, ValueError):
    """An operation was called with invalid parameters (message names the field)."""


class EdgeListError(ParameterError):
    """Malformed edge-list text: bad header, bad line, range violation, duplicate, loop."""


class DisconnectedGraphError(RobustpdError, ValueError):
    """A solver that requires a connected graph received a disconnected one."""


class NotBlockGraphError(RobustpdError, ValueError):
    """A block-graph operation received a graph with a non-complete block."""


class NoCutVerticesError(RobustpdError, ValueError):
    """The refined cut-tree is undefined for a graph that is a single block."""


class UndefinedParameterError(RobustpdError, ValueError):
    """The requested graph parameter is undefined for the given arguments."""


class InfeasibleError(RobustpdError):
    """No solution exists for the requested instance."""


class CrossCheckError(RobustpdError):
    """A closed-form value disagreed with the exact search."""


class SearchTimeout(RobustpdError):
    """An exact search hit its deadline.

    ``proven_lower`` carries the strongest lower bound established before the
    abort (every total below it was exhausted), so callers can report a
    partial bound interval.
    """

    def __init__(self, message: str, *, proven_lower: int | None = None):
        super().__init__(message)
        self.proven_lower = proven_lower
