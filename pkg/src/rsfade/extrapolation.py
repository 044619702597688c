"""Richardson extrapolation over grids ``(h, tau)``, ``(h/2, tau/2)``, ``(h/4, tau/4)``."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from rsfade.discretization import Grid
from rsfade.linsolve import SolverChoice
from rsfade.problems import ProblemSpec
from rsfade.stepper import integrate


def restrict(fine_values, factor: int = 2) -> np.ndarray:
    """Interior values on a grid refined by ``factor`` -> values at the coarse nodes.

    Samples coincident nodes only; no interpolation.
    """
    v = np.asarray(fine_values, dtype=float)
    if factor < 1 or (len(v) + 1) % factor:
        raise ValueError(
            f"{len(v)} interior values do not come from a {factor}-fold refinement")
    return v[factor - 1 :: factor]


def _check_pair(a, b):
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return a, b


def richardson_order3(coarse, mid_restricted) -> np.ndarray:
    """``(4 mid - coarse) / 3``: cancels an ``h^2`` error term."""
    c, m = _check_pair(coarse, mid_restricted)
    return (4.0 * m - c) / 3.0


def richardson_order4(coarse3, mid3) -> np.ndarray:
    """``(8 mid - coarse) / 7``: cancels an ``h^3`` error term."""
    c, m = _check_pair(coarse3, mid3)
    return (8.0 * m - c) / 7.0


def rem_combine(coarse, mid, fine) -> np.ndarray:
    """Combine final-time interior values from three nested grids onto the coarse grid."""
    mid, fine = np.asarray(mid), np.asarray(fine)
    first = richardson_order3(coarse, restrict(mid, 2))
    second = richardson_order3(restrict(mid, 2), restrict(fine, 4))
    return richardson_order4(first, second)


def rem_solve(problem: ProblemSpec, grid: Grid, choice: SolverChoice | None = None,
              workers: int = 1) -> np.ndarray:
    """Extrapolated interior solution at ``T`` on ``grid`` (the coarse grid)."""
    grids = [grid, grid.refined(2), grid.refined(4)]

    def run(g):
        return integrate(problem, g, choice).final

    if workers > 1:
        with ThreadPoolExecutor(max_workers=min(workers, 3)) as pool:
            coarse, mid, fine = pool.map(run, grids)
    else:
        coarse, mid, fine = map(run, grids)
    return rem_combine(coarse, mid, fine)
