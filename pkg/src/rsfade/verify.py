"""Executable checks of the coefficient laws and the matrix and stability properties.

Each suite returns a list of :class:`CheckResult`; the ``verify`` CLI command
prints them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from rsfade.coeffs import GrunwaldSeq, grunwald_coeffs, check_coefficient_laws
from rsfade.discretization import Grid, assemble_system, left_rl_all, right_rl_all
from rsfade.linsolve import ShiftedSolver
from rsfade.problems import left_rl_polynomial, right_rl_polynomial
from rsfade.stepper import cn_step

ADVECTION_GRID = tuple(round(0.1 * k, 1) for k in range(1, 10))
DISPERSION_GRID = tuple(round(1.0 + 0.1 * k, 1) for k in range(1, 11))
MATRIX_ALPHAS = (0.1, 0.5, 0.9)
MATRIX_BETAS = (1.2, 1.5, 1.8, 2.0)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.suite}: {self.name}" + (f" ({self.detail})" if self.detail else "")


def coefficient_suite(n: int = 256) -> list[CheckResult]:
    out = []
    for gamma in ADVECTION_GRID + DISPERSION_GRID:
        rep = check_coefficient_laws(GrunwaldSeq(gamma, n))
        bad = ", ".join(c.name for c in rep.failures())
        out.append(CheckResult("coefficients", f"gamma={gamma} n={n}", rep.ok, bad))
        if gamma < 2.0:
            s_small = abs(grunwald_coeffs(gamma, 256).sum())
            s_big = abs(grunwald_coeffs(gamma, 4096).sum())
            out.append(CheckResult("coefficients", f"gamma={gamma} tail |S_4096| < |S_256|",
                                   s_big < s_small, f"{s_big:.3e} vs {s_small:.3e}"))
    return out


def _poly_x3():
    from numpy.polynomial import Polynomial

    return Polynomial([0, 0, 0, 1]) * Polynomial([1, -1]) ** 3


def operator_errors(gamma: float, m: int, midpoint: bool = False) -> tuple[float, float]:
    """Max (or midpoint) error of the left/right WSGD operators on ``x^3 (1-x)^3``."""
    poly = _poly_x3()
    h = 1.0 / m
    x = np.arange(m + 1) * h
    v = poly(x)
    xi = x[1:-1]
    el = np.abs(left_rl_all(v, gamma, h) - left_rl_polynomial(poly, gamma, xi))
    er = np.abs(right_rl_all(v, gamma, h) - right_rl_polynomial(poly, gamma, xi, 1.0))
    if midpoint:
        return float(el[m // 2 - 1]), float(er[m // 2 - 1])
    return float(el.max()), float(er.max())


def operator_suite(ladder=(32, 64, 128)) -> list[CheckResult]:
    """Observed order of the WSGD operators; max norm for gamma <= 0.5, midpoint above (boundary layer)."""
    out = []
    for gamma, midpoint in ((0.3, False), (0.5, False), (0.9, True), (1.5, True), (1.8, True)):
        errs = [operator_errors(gamma, m, midpoint) for m in ladder]
        for side, idx in (("left", 0), ("right", 1)):
            orders = [np.log2(errs[k][idx] / errs[k + 1][idx]) for k in range(len(ladder) - 1)]
            ok = all(1.8 <= p <= 2.2 for p in orders)
            where = "midpoint" if midpoint else "max-norm"
            out.append(CheckResult("operator", f"{side} gamma={gamma} {where}", ok,
                                   "orders " + ", ".join(f"{p:.3f}" for p in orders)))
    return out


def matrix_checks(alpha: float, beta: float, m: int, K_alpha: float = 1.0,
                  K_beta: float = 1.0) -> dict[str, bool]:
    grid = Grid(1.0, m, 1.0, m)
    D = assemble_system(grid, alpha, beta, K_alpha, K_beta).dense()
    n = D.shape[0]
    I = np.eye(n)
    off = np.abs(D).sum(axis=1) - np.abs(np.diag(D))
    inv = np.linalg.inv(I + D)
    return {
        "symmetric": bool(np.array_equal(D, D.T)),
        "strictly diagonally dominant": bool(np.all(np.abs(np.diag(D)) > off)),
        "positive definite": bool(np.linalg.eigvalsh(D).min() > 0),
        "||(I+D)^-1||_2 <= 1": bool(np.linalg.norm(inv, 2) <= 1.0),
        "||(I+D)^-1 (I-D)||_2 <= 1": bool(np.linalg.norm(inv @ (I - D), 2) <= 1.0),
    }


def matrix_suite(ms=(8, 32)) -> list[CheckResult]:
    out = []
    for alpha, beta, m in itertools.product(MATRIX_ALPHAS, MATRIX_BETAS, ms):
        for name, ok in matrix_checks(alpha, beta, m).items():
            out.append(CheckResult("matrix", f"alpha={alpha} beta={beta} m={m} {name}", ok))
    return out


def stability_suite(m: int = 32, steps: int = 200, ratios=(0.1, 1.0, 10.0),
                    seed: int = 0) -> list[CheckResult]:
    """Norm of the homogeneous solution never grows, at any ``tau/h``."""
    rng = np.random.default_rng(seed)
    out = []
    for alpha, beta in ((0.1, 1.2), (0.5, 1.5), (0.9, 2.0)):
        for ratio in ratios:
            h = 1.0 / m
            grid = Grid(1.0, m, steps * ratio * h, steps)
            sys = assemble_system(grid, alpha, beta, 1.0, 1.0)
            solver = ShiftedSolver(sys)
            u = rng.standard_normal(m - 1)
            zero = np.zeros(m - 1)
            norms = [np.linalg.norm(u)]
            for _ in range(steps):
                u = cn_step(sys, u, zero, zero, grid.tau, solver)
                norms.append(np.linalg.norm(u))
            ok = all(b <= a for a, b in zip(norms, norms[1:]))
            out.append(CheckResult("stability", f"alpha={alpha} beta={beta} tau/h={ratio}", ok,
                                   f"||U^N||/||U^0|| = {norms[-1] / norms[0]:.3e}"))
    return out


SUITES = {
    "coefficients": coefficient_suite,
    "operator": operator_suite,
    "matrix": matrix_suite,
    "stability": stability_suite,
}


def run_all(names=None) -> list[CheckResult]:
    results = []
    for name in names or SUITES:
        results.extend(SUITES[name]())
    return results
