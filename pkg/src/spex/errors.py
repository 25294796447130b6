"""Exception hierarchy shared by the whole package.

The CLI maps these onto exit codes: ParameterError -> 2, DataError -> 3.
"""

from __future__ import annotations


class SpexError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(SpexError, ValueError):
    """An argument violates a documented precondition."""


class CapacityError(ParameterError):
    """A request exceeds a configured resource cap (e.g. enumeration size)."""


class DataError(SpexError, ValueError):
    """Input data (files, streams) is inconsistent or malformed."""


class Graph6ParseError(DataError):
    """Malformed graph6 text; ``offset`` is the 0-based byte position."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class ConvergenceError(SpexError, RuntimeError):
    """Eigensolver failed to reach the requested tolerance.

    Carries the best iterate found so the caller can inspect it.
    """

    def __init__(self, message: str, best_lambda: float, residual: float,
                 iterations: int, best_vector=None):
        super().__init__(message)
        self.best_lambda = best_lambda
        self.residual = residual
        self.iterations = iterations
        self.best_vector = best_vector
