"""Solution profiles ``u(x, t)`` at selected times, for external plotting."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from rsfade.discretization import Grid
from rsfade.errors import ConfigError
from rsfade.linsolve import SolverChoice
from rsfade.problems import ProblemSpec
from rsfade.stepper import integrate

PROFILE_HEADER = ("alpha", "beta", "t", "x", "u_numeric", "u_exact")


def time_steps(grid: Grid, times) -> list[int]:
    """Map requested times to step indices; every time must be a multiple of ``tau``."""
    times = list(times)
    if not times:
        raise ConfigError("at least one output time is required")
    steps = []
    for t in times:
        n = t / grid.tau
        k = round(n)
        if abs(n - k) > 1e-9 * max(1.0, abs(n)) or not 0 <= k <= grid.N:
            lo = min(max(int(np.floor(n)), 0), grid.N)
            hi = min(lo + 1, grid.N)
            raise ConfigError(
                f"time {t} is not on the grid (tau={grid.tau:g}, T={grid.T:g}); "
                f"nearest grid times are {lo * grid.tau:g} and {hi * grid.tau:g}")
        steps.append(k)
    return steps


def profile_rows(problem: ProblemSpec, grid: Grid, times, choice: SolverChoice | None = None):
    """Yield ``(t, x, u_numeric, u_exact or None)`` arrays, one tuple per time."""
    steps = time_steps(grid, times)
    sol = integrate(problem, grid, choice, keep_steps=steps)
    x = grid.x
    for n in steps:
        t = n * grid.tau
        u = sol.with_boundary(sol.at_step(n))
        exact = problem.exact(x, t) if problem.has_exact else None
        yield t, x, u, exact


def emit_profile(problem, grid: Grid, times, path, choice: SolverChoice | None = None) -> dict:
    """Write profiles for one problem (or a list, for parameter sweeps) to a CSV.

    Returns ``{(alpha, beta, t): (x, u_numeric, u_exact)}``.
    """
    problems = problem if isinstance(problem, (list, tuple)) else [problem]
    time_steps(grid, times)  # validate before any work
    data = {}
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(PROFILE_HEADER)
        for p in problems:
            for t, x, u, exact in profile_rows(p, grid, times, choice):
                data[(p.alpha.gamma, p.beta.gamma, t)] = (x, u, exact)
                for k in range(len(x)):
                    writer.writerow([
                        f"{p.alpha.gamma:g}", f"{p.beta.gamma:g}", f"{t:.10g}", f"{x[k]:.10e}",
                        f"{u[k]:.10e}", "" if exact is None else f"{exact[k]:.10e}",
                    ])
    return data
