"""Solvers for ``(I + D) x = b`` with ``D`` symmetric positive definite."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from rsfade.discretization import RieszSystem, apply_D
from rsfade.errors import DomainError, SolverError


class SolverKind(enum.Enum):
    DENSE = "dense"
    CG = "cg"


@dataclass(frozen=True)
class SolverChoice:
    kind: SolverKind = SolverKind.DENSE
    cg_tol: float = 1e-12
    cg_max_iter: int | None = None  # None means 10 * (m - 1)
    jacobi: bool = False

    def __post_init__(self) -> None:
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", SolverKind(self.kind))
        if not self.cg_tol > 0:
            raise DomainError(f"cg_tol must be positive, got {self.cg_tol}")
        if self.cg_max_iter is not None and self.cg_max_iter < 1:
            raise DomainError(f"cg_max_iter must be >= 1, got {self.cg_max_iter}")

    def max_iter(self, n: int) -> int:
        return self.cg_max_iter if self.cg_max_iter is not None else 10 * n


def conjugate_gradient(matvec, b: np.ndarray, tol: float, max_iter: int,
                       diag: np.ndarray | None = None) -> tuple[np.ndarray, int]:
    """Solve ``A x = b`` for SPD ``A`` given only ``matvec``.

    Stops once ``||b - A x||_2 <= tol * ||b||_2``. With ``diag`` a Jacobi
    preconditioner is applied. Returns the solution and iteration count.
    """
    b = np.asarray(b, dtype=float)
    x = np.zeros_like(b)
    bnorm = np.linalg.norm(b)
    if bnorm == 0.0:
        return x, 0
    target = tol * bnorm
    r = b.copy()
    z = r / diag if diag is not None else r
    p = z.copy()
    rz = r @ z
    for it in range(1, max_iter + 1):
        Ap = matvec(p)
        step = rz / (p @ Ap)
        x += step * p
        r -= step * Ap
        if np.linalg.norm(r) <= target:
            # the recursive residual drifts; confirm against the true one
            r = b - matvec(x)
            if np.linalg.norm(r) <= target:
                return x, it
        z = r / diag if diag is not None else r
        rz_new = r @ z
        p = z + (rz_new / rz) * p
        rz = rz_new
    res = np.linalg.norm(b - matvec(x))
    raise SolverError(
        f"CG did not converge in {max_iter} iterations "
        f"(relative residual {res / bnorm:.3e}, tolerance {tol:.1e})",
        residual=float(res),
        iterations=max_iter,
    )


class ShiftedSolver:
    """Reusable solver for ``(I + D) x = b``; factor once, solve many times."""

    def __init__(self, sys: RieszSystem, choice: SolverChoice | None = None) -> None:
        self.sys = sys
        self.choice = choice or SolverChoice()
        self.iterations: list[int] = []
        n = sys.size
        if self.choice.kind is SolverKind.DENSE:
            M = sys.dense()
            M[np.diag_indices(n)] += 1.0
            self._factor = cho_factor(M, lower=False, check_finite=True)
        else:
            self._factor = None
            self._diag = np.full(n, 1.0 + sys.d_col[0]) if self.choice.jacobi else None

    def matvec(self, v: np.ndarray) -> np.ndarray:
        """``(I + D) v``."""
        return v + apply_D(self.sys, v)

    def solve(self, b) -> np.ndarray:
        b = np.asarray(b, dtype=float)
        if b.shape != (self.sys.size,):
            raise ValueError(f"right-hand side must have length {self.sys.size}, got {b.shape}")
        if self._factor is not None:
            return cho_solve(self._factor, b, check_finite=False)
        x, it = conjugate_gradient(self.matvec, b, self.choice.cg_tol,
                                   self.choice.max_iter(self.sys.size), self._diag)
        self.iterations.append(it)
        return x


def solve_spd(sys: RieszSystem, b, choice: SolverChoice | None = None) -> np.ndarray:
    """One-off solve of ``(I + D) x = b``."""
    return ShiftedSolver(sys, choice).solve(b)
