"""Exception hierarchy."""

from __future__ import annotations


class PptError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PptError, ValueError):
    """An argument lies outside the domain of an operation."""


class CapacityError(PptError):
    """A requested qubit count exceeds the configured limits."""


class NumericalError(PptError, ArithmeticError):
    """A numerical routine failed (non-convergence, self-check mismatch)."""

    def __init__(self, message: str, *, iterations: int | None = None, bipartition=None):
        super().__init__(message)
        self.iterations = iterations
        self.bipartition = bipartition
