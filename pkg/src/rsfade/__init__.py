"""Crank-Nicolson / WSGD solver for Riesz space fractional advection-dispersion equations."""

from rsfade.coeffs import FractionalOrder, GrunwaldSeq, grunwald_coeffs, check_coefficient_laws, wsgd_weights
from rsfade.discretization import (
    Grid,
    RieszSystem,
    apply_D,
    assemble_system,
    left_rl_derivative,
    riesz_toeplitz_column,
    right_rl_derivative,
)
from rsfade.errors import ConfigError, DomainError, SolverError, StabilityError
from rsfade.extrapolation import rem_solve, restrict, richardson_order3, richardson_order4
from rsfade.linsolve import SolverChoice, SolverKind, solve_spd
from rsfade.problems import ProblemSpec, example1, example2, example3, example3_exact
from rsfade.stepper import GridSolution, Keep, cn_step, integrate

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DomainError",
    "FractionalOrder",
    "Grid",
    "GridSolution",
    "GrunwaldSeq",
    "Keep",
    "ProblemSpec",
    "RieszSystem",
    "SolverChoice",
    "SolverError",
    "SolverKind",
    "StabilityError",
    "apply_D",
    "assemble_system",
    "cn_step",
    "example1",
    "example2",
    "example3",
    "example3_exact",
    "grunwald_coeffs",
    "integrate",
    "left_rl_derivative",
    "rem_solve",
    "restrict",
    "richardson_order3",
    "richardson_order4",
    "riesz_toeplitz_column",
    "right_rl_derivative",
    "solve_spd",
    "check_coefficient_laws",
    "wsgd_weights",
]
