"""Problem definitions and the three built-in manufactured/analytic examples."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial import Polynomial

from rsfade.coeffs import FractionalOrder
from rsfade.discretization import riesz_constant
from rsfade.errors import DomainError

SpaceFn = Callable[[np.ndarray], np.ndarray]
SpaceTimeFn = Callable[[np.ndarray, float], np.ndarray]


def _zero_x(x):
    return np.zeros_like(np.asarray(x, dtype=float))


def _zero_xt(x, t):
    return np.zeros_like(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class ProblemSpec:
    """``u_t = K_a d^a u/d|x|^a + K_b d^b u/d|x|^b + f`` on ``(0, L)`` with zero Dirichlet data."""

    L: float
    alpha: FractionalOrder
    beta: FractionalOrder
    K_alpha: float
    K_beta: float
    psi: SpaceFn
    f: SpaceTimeFn = _zero_xt
    exact: SpaceTimeFn | None = None
    name: str = "custom"

    def __post_init__(self) -> None:
        if isinstance(self.alpha, (int, float)):
            object.__setattr__(self, "alpha", FractionalOrder.advection(self.alpha))
        if isinstance(self.beta, (int, float)):
            object.__setattr__(self, "beta", FractionalOrder.dispersion(self.beta))
        if not self.L > 0:
            raise DomainError(f"L must be positive, got {self.L}")
        if self.K_alpha < 0:
            raise DomainError(f"K_alpha must be >= 0, got {self.K_alpha}")
        if not self.K_beta > 0:
            raise DomainError(f"K_beta must be > 0, got {self.K_beta}")
        ends = np.asarray(self.psi(np.array([0.0, self.L])), dtype=float)
        if np.any(np.abs(ends) > 1e-12):
            raise DomainError(f"initial condition must vanish at 0 and L, got {ends.tolist()}")

    @property
    def has_exact(self) -> bool:
        return self.exact is not None


# ---------------------------------------------------------------------------
# Fractional derivatives of polynomials


def _gamma_ratio(p: float, gamma: float) -> float:
    """``Gamma(p + 1) / Gamma(p + 1 - gamma)`` via log-gamma."""
    if p + 1.0 - gamma <= 0:
        raise DomainError(f"Gamma pole for power {p} and order {gamma}")
    return math.exp(math.lgamma(p + 1.0) - math.lgamma(p + 1.0 - gamma))


def left_rl_polynomial(poly: Polynomial, gamma: float, x) -> np.ndarray:
    """Exact left Riemann-Liouville derivative (from 0) of ``poly`` at ``x``.

    Applies ``D x^p = Gamma(p+1)/Gamma(p+1-gamma) x^(p-gamma)`` termwise; every
    power with a nonzero coefficient must satisfy ``p + 1 > gamma``.
    """
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    for p, c in enumerate(poly.coef):
        if c != 0.0:
            out = out + c * _gamma_ratio(p, gamma) * x ** (p - gamma)
    return out


def reflect(poly: Polynomial, L: float) -> Polynomial:
    """``y -> poly(L - y)``."""
    return poly(Polynomial([L, -1.0]))


def right_rl_polynomial(poly: Polynomial, gamma: float, x, L: float) -> np.ndarray:
    """Exact right Riemann-Liouville derivative (to ``L``) of ``poly`` at ``x``."""
    return left_rl_polynomial(reflect(poly, L), gamma, L - np.asarray(x, dtype=float))


def riesz_polynomial(poly: Polynomial, gamma: float, x, L: float) -> np.ndarray:
    """Exact Riesz derivative ``-c_gamma (left + right)`` of ``poly`` on ``[0, L]``."""
    return -riesz_constant(gamma) * (
        left_rl_polynomial(poly, gamma, x) + right_rl_polynomial(poly, gamma, x, L)
    )


def manufactured_source(space: Polynomial, time_fn, time_deriv, alpha: float, beta: float,
                        K_alpha: float, K_beta: float, L: float) -> SpaceTimeFn:
    """Source ``f = u_t - K_a R_a u - K_b R_b u`` for ``u = time_fn(t) * space(x)``."""

    def f(x, t):
        x = np.asarray(x, dtype=float)
        spatial = K_beta * riesz_polynomial(space, beta, x, L)
        if K_alpha:
            spatial = spatial + K_alpha * riesz_polynomial(space, alpha, x, L)
        return time_deriv(t) * space(x) - time_fn(t) * spatial

    return f


# ---------------------------------------------------------------------------
# Example 1: fractional diffusion with a source, u = x^2 (1-x)^2 e^{-t}


def _check_beta(beta: float) -> None:
    if not 1.0 < beta <= 2.0:
        raise DomainError(f"beta must satisfy 1 < beta <= 2, got {beta}")


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must satisfy 0 < alpha < 1, got {alpha}")


def example1_source(beta: float) -> SpaceTimeFn:
    """The closed-form source of example 1, three Gamma-ratio groups."""
    g5, g4, g3 = math.gamma(5 - beta), math.gamma(4 - beta), math.gamma(3 - beta)
    c = 1.0 / (2.0 * math.cos(beta * math.pi / 2.0))

    def f(x, t):
        x = np.asarray(x, dtype=float)
        y = 1.0 - x
        bracket = (
            24.0 / g5 * (x ** (4 - beta) + y ** (4 - beta))
            - 12.0 / g4 * (x ** (3 - beta) + y ** (3 - beta))
            + 2.0 / g3 * (x ** (2 - beta) + y ** (2 - beta))
        )
        return -(x**2) * y**2 * np.exp(-t) + np.exp(-t) * c * bracket

    return f


def example1(beta: float) -> ProblemSpec:
    _check_beta(beta)

    def exact(x, t):
        x = np.asarray(x, dtype=float)
        return x**2 * (1 - x) ** 2 * np.exp(-t)

    return ProblemSpec(
        L=1.0,
        alpha=FractionalOrder.advection(0.5),  # unused: K_alpha = 0
        beta=FractionalOrder.dispersion(beta),
        K_alpha=0.0,
        K_beta=1.0,
        psi=lambda x: exact(x, 0.0),
        f=example1_source(beta),
        exact=exact,
        name="example1",
    )


# ---------------------------------------------------------------------------
# Example 2: advection-dispersion with a source, u = t^beta e^{alpha t} x^6 (1-x)^6

EXAMPLE2_SPACE = Polynomial([0.0, 1.0]) ** 6 * Polynomial([1.0, -1.0]) ** 6


def example2_source_closed_form(alpha: float, beta: float, K_alpha: float = 2.0,
                                K_beta: float = 2.0) -> SpaceTimeFn:
    """The source written out as Gamma-ratio sums over ``l(x, p) = x^p + (1-x)^p``."""
    binom = [1, -6, 15, -20, 15, -6, 1]

    def brace(x, g):
        total = np.zeros_like(x)
        for j, b in enumerate(binom):
            p = 6 + j
            total = total + b * math.gamma(p + 1) / math.gamma(p + 1 - g) * (
                x ** (p - g) + (1 - x) ** (p - g))
        return total

    def f(x, t):
        x = np.asarray(x, dtype=float)
        growth = t**beta * math.exp(alpha * t)
        return (
            K_alpha * growth / (2 * math.cos(alpha * math.pi / 2)) * brace(x, alpha)
            + K_beta * growth / (2 * math.cos(beta * math.pi / 2)) * brace(x, beta)
            + t ** (beta - 1) * math.exp(alpha * t) * (beta + alpha * t) * x**6 * (1 - x) ** 6
        )

    return f


def example2(alpha: float, beta: float, K_alpha: float = 2.0, K_beta: float = 2.0) -> ProblemSpec:
    """Source derived from the exact solution by the polynomial rule."""
    _check_alpha(alpha)
    _check_beta(beta)
    space = EXAMPLE2_SPACE

    def exact(x, t):
        return t**beta * math.exp(alpha * t) * space(np.asarray(x, dtype=float))

    f = manufactured_source(
        space,
        time_fn=lambda t: t**beta * math.exp(alpha * t),
        time_deriv=lambda t: (t ** (beta - 1) * (beta + alpha * t) * math.exp(alpha * t)
                              if t > 0 else 0.0),
        alpha=alpha, beta=beta, K_alpha=K_alpha, K_beta=K_beta, L=1.0,
    )
    return ProblemSpec(
        L=1.0,
        alpha=FractionalOrder.advection(alpha),
        beta=FractionalOrder.dispersion(beta),
        K_alpha=K_alpha,
        K_beta=K_beta,
        psi=_zero_x,
        f=f,
        exact=exact,
        name="example2",
    )


# ---------------------------------------------------------------------------
# Example 3: sine-series solution on [0, pi]

SERIES_TOL = 1e-14
SERIES_CAP = 1_000_000
SERIES_CAP_T0 = 100_000


def example3_terms(t: float, K_beta: float, beta: float) -> int:
    """Smallest ``n`` with ``(8/n^3) exp(-K_b n^b t) < 1e-14``, capped.

    At ``t = 0`` no damping is available and a fixed cap is used; the
    truncation error there is ``O(1/n^2)``.
    """
    if t <= 0:
        return SERIES_CAP_T0
    n = 1
    while 8.0 / n**3 * math.exp(-K_beta * n**beta * t) >= SERIES_TOL:
        n *= 2
        if n >= SERIES_CAP:
            return SERIES_CAP
    lo, hi = n // 2, n
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if 8.0 / mid**3 * math.exp(-K_beta * mid**beta * t) >= SERIES_TOL:
            lo = mid
        else:
            hi = mid
    return hi


def example3_exact(x, t: float, alpha: float, beta: float, K_alpha: float, K_beta: float,
                   terms: int) -> np.ndarray:
    """Partial sum of the sine series with ``terms`` modes."""
    if terms < 1:
        raise DomainError(f"terms must be >= 1, got {terms}")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.zeros_like(x)
    chunk = max(1, 2_000_000 // max(1, x.size))
    for start in range(1, terms + 1, chunk):
        n = np.arange(start, min(terms, start + chunk - 1) + 1, dtype=float)
        coef = (8.0 * np.where(n % 2 == 1, 1.0, -1.0) - 4.0) / n**3
        coef = coef * np.exp(-(K_alpha * n**alpha + K_beta * n**beta) * t)
        out += np.sin(np.outer(x, n)) @ coef
    return out


def example3(alpha: float, beta: float, K_alpha: float = 0.15, K_beta: float = 0.15) -> ProblemSpec:
    _check_alpha(alpha)
    _check_beta(beta)

    def exact(x, t):
        terms = example3_terms(t, K_beta, beta)
        return example3_exact(x, t, alpha, beta, K_alpha, K_beta, terms)

    return ProblemSpec(
        L=math.pi,
        alpha=FractionalOrder.advection(alpha),
        beta=FractionalOrder.dispersion(beta),
        K_alpha=K_alpha,
        K_beta=K_beta,
        psi=lambda x: np.asarray(x, dtype=float) ** 2 * (math.pi - np.asarray(x, dtype=float)),
        f=_zero_xt,
        exact=exact,
        name="example3",
    )


def zero_problem(alpha: float = 0.5, beta: float = 1.5, L: float = 1.0) -> ProblemSpec:
    """Homogeneous problem with zero data; its solution is identically zero."""
    return ProblemSpec(L=L, alpha=FractionalOrder.advection(alpha),
                       beta=FractionalOrder.dispersion(beta), K_alpha=1.0, K_beta=1.0,
                       psi=_zero_x, f=_zero_xt, exact=_zero_xt, name="zero")


BUILTIN = ("example1", "example2", "example3", "zero")


def builtin(name: str, alpha: float, beta: float) -> ProblemSpec:
    if name == "example1":
        return example1(beta)
    if name == "example2":
        return example2(alpha, beta)
    if name == "example3":
        return example3(alpha, beta)
    if name == "zero":
        return zero_problem(alpha, beta)
    raise DomainError(f"unknown problem {name!r}; choose from {', '.join(BUILTIN)}")
