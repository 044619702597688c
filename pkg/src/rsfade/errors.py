"""Exception types raised by the solver."""

from __future__ import annotations


class DomainError(ValueError):
    """A parameter lies outside the range the scheme is defined for."""


class SolverError(RuntimeError):
    """An iterative solve did not reach its tolerance."""

    def __init__(self, message: str, residual: float, iterations: int) -> None:
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class StabilityError(FloatingPointError):
    """A time step produced a non-finite value."""

    def __init__(self, message: str, step: int) -> None:
        super().__init__(message)
        self.step = step


class ConfigError(ValueError):
    """An inconsistent run configuration."""
