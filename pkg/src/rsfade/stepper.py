"""Crank-Nicolson time marching: ``(I + D) U^n = (I - D) U^{n-1} + tau/2 (F^{n-1} + F^n)``."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from rsfade.discretization import Grid, RieszSystem, apply_D, assemble_system
from rsfade.errors import DomainError, StabilityError
from rsfade.linsolve import ShiftedSolver, SolverChoice
from rsfade.problems import ProblemSpec


class Keep(enum.Enum):
    FINAL_ONLY = "final"
    ALL_STEPS = "all"


@dataclass(frozen=True)
class GridSolution:
    """Interior values ``u[row, i-1] ~ u(x_i, t_{steps[row]})``; boundaries are zero."""

    grid: Grid
    u: np.ndarray = field(repr=False)
    steps: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not self.steps:
            object.__setattr__(self, "steps", tuple(range(self.u.shape[0])))

    @property
    def final(self) -> np.ndarray:
        return self.u[-1]

    @property
    def times(self) -> np.ndarray:
        return np.asarray(self.steps) * self.grid.tau

    def at_step(self, n: int) -> np.ndarray:
        try:
            return self.u[self.steps.index(n)]
        except ValueError:
            raise KeyError(f"step {n} was not retained") from None

    def with_boundary(self, row: np.ndarray) -> np.ndarray:
        """Pad an interior row with the zero boundary values."""
        return np.concatenate(([0.0], row, [0.0]))


def cn_step(sys: RieszSystem, u_prev, f_prev, f_curr, tau: float,
            choice: SolverChoice | ShiftedSolver | None = None) -> np.ndarray:
    """Advance one step. ``choice`` may be a prebuilt :class:`ShiftedSolver`."""
    solver = choice if isinstance(choice, ShiftedSolver) else ShiftedSolver(sys, choice)
    u_prev = np.asarray(u_prev, dtype=float)
    rhs = u_prev - apply_D(sys, u_prev) + 0.5 * tau * (np.asarray(f_prev) + np.asarray(f_curr))
    return solver.solve(rhs)


def integrate(problem: ProblemSpec, grid: Grid, choice: SolverChoice | None = None,
              keep: Keep = Keep.FINAL_ONLY, keep_steps=None) -> GridSolution:
    """March ``problem`` over ``grid``.

    ``keep_steps`` (an iterable of step indices) overrides ``keep`` and retains
    exactly those rows, in increasing order.
    """
    if abs(problem.L - grid.L) > 1e-12 * max(1.0, problem.L):
        raise DomainError(f"grid length {grid.L} does not match problem length {problem.L}")
    sys = assemble_system(grid, problem.alpha, problem.beta, problem.K_alpha, problem.K_beta)
    solver = ShiftedSolver(sys, choice)
    x, tau = grid.interior, grid.tau

    if keep_steps is not None:
        wanted = sorted(set(int(n) for n in keep_steps))
    elif keep is Keep.ALL_STEPS:
        wanted = list(range(grid.N + 1))
    else:
        wanted = [0, grid.N]

    u = np.asarray(problem.psi(x), dtype=float)
    rows = [u.copy()] if 0 in wanted else []
    f_prev = np.asarray(problem.f(x, 0.0), dtype=float)
    for n in range(1, grid.N + 1):
        f_curr = np.asarray(problem.f(x, n * tau), dtype=float)
        u = cn_step(sys, u, f_prev, f_curr, tau, solver)
        if not np.all(np.isfinite(u)):
            raise StabilityError(f"non-finite value at step {n} (t={n * tau:g})", step=n)
        if n in wanted:
            rows.append(u.copy())
        f_prev = f_curr
    return GridSolution(grid, np.array(rows), tuple(wanted))
