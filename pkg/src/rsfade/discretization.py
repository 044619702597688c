"""Discrete Riesz operators on a uniform grid and the Crank-Nicolson matrix.

The matrix ``D = mu_a (A + A^T) + mu_b (B + B^T)`` is symmetric Toeplitz, so
only its first column is stored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import matmul_toeplitz, toeplitz

from rsfade.coeffs import FractionalOrder, wsgd_weights
from rsfade.errors import DomainError

# Below this size the O(m^2) direct product beats the FFT route.
FFT_THRESHOLD = 256


@dataclass(frozen=True)
class Grid:
    """Uniform space-time grid: ``m`` space intervals on ``[0, L]``, ``N`` steps to ``T``."""

    L: float
    m: int
    T: float
    N: int

    def __post_init__(self) -> None:
        if not self.L > 0:
            raise DomainError(f"domain length must be positive, got {self.L}")
        if int(self.m) != self.m or self.m < 3:
            raise DomainError(f"need at least 3 space intervals, got m={self.m}")
        if not self.T > 0:
            raise DomainError(f"final time must be positive, got {self.T}")
        if int(self.N) != self.N or self.N < 1:
            raise DomainError(f"need at least one time step, got N={self.N}")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "N", int(self.N))

    @classmethod
    def uniform(cls, L: float, m: int, T: float, tau: float | None = None) -> Grid:
        """Grid with ``h = L/m`` and a time step as close to ``tau`` (default ``h``) as divides ``T``."""
        h = L / m
        tau = h if tau is None else tau
        N = max(1, round(T / tau))
        return cls(L, m, T, N)

    @property
    def h(self) -> float:
        return self.L / self.m

    @property
    def tau(self) -> float:
        return self.T / self.N

    @property
    def x(self) -> np.ndarray:
        """All nodes ``x_0 .. x_m``."""
        return np.arange(self.m + 1) * self.h

    @property
    def interior(self) -> np.ndarray:
        """Interior nodes ``x_1 .. x_{m-1}``."""
        return np.arange(1, self.m) * self.h

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.N + 1) * self.tau

    def refined(self, factor: int = 2) -> Grid:
        """Same domain with both steps divided by ``factor``."""
        return Grid(self.L, self.m * factor, self.T, self.N * factor)


def riesz_constant(gamma: float) -> float:
    """``c_gamma = 1 / (2 cos(pi gamma / 2))``; undefined at ``gamma = 1``."""
    if gamma == 1.0:
        raise DomainError("c_gamma is singular at gamma = 1")
    return 1.0 / (2.0 * math.cos(math.pi * gamma / 2.0))


def _check_index(values: np.ndarray, i: int) -> int:
    m = len(values) - 1
    if not 1 <= i <= m - 1:
        raise IndexError(f"node index {i} outside interior range 1..{m - 1}")
    return m


def left_rl_derivative(values, gamma: float, h: float, i: int) -> float:
    """WSGD approximation of the left Riemann-Liouville derivative at ``x_i``.

    ``values`` holds ``v(x_0) .. v(x_m)`` with ``v(x_0) = 0``, so that the
    zero extension to the left of the domain is implied.
    """
    v = np.asarray(values, dtype=float)
    _check_index(v, i)
    w = wsgd_weights(gamma, i + 1)
    # sum_{k=0}^{i+1} w_k v_{i-k+1}
    return float(np.dot(w, v[i + 1 :: -1][: i + 2])) / h**gamma


def right_rl_derivative(values, gamma: float, h: float, i: int) -> float:
    """Mirror image of :func:`left_rl_derivative`; needs ``v(x_m) = 0``."""
    v = np.asarray(values, dtype=float)
    m = _check_index(v, i)
    w = wsgd_weights(gamma, m - i + 1)
    # sum_{k=0}^{m-i+1} w_k v_{i+k-1}
    return float(np.dot(w, v[i - 1 :])) / h**gamma


def left_rl_all(values, gamma: float, h: float) -> np.ndarray:
    """:func:`left_rl_derivative` at every interior node, by one convolution."""
    v = np.asarray(values, dtype=float)
    m = len(v) - 1
    w = wsgd_weights(gamma, m)
    full = np.convolve(w, v)
    return full[2 : m + 1] / h**gamma


def right_rl_all(values, gamma: float, h: float) -> np.ndarray:
    v = np.asarray(values, dtype=float)
    return left_rl_all(v[::-1], gamma, h)[::-1]


def riesz_derivative(values, gamma: float, h: float) -> np.ndarray:
    """Discrete Riesz derivative ``-c_gamma (left + right)`` at interior nodes."""
    return -riesz_constant(gamma) * (left_rl_all(values, gamma, h) + right_rl_all(values, gamma, h))


def riesz_toeplitz_column(gamma: float, m: int) -> np.ndarray:
    """First column of ``A + A^T`` (order ``gamma``, size ``m - 1``).

    Entries are ``2 w_1``, ``w_0 + w_2``, then ``w_{k+1}`` for ``k >= 2``.
    """
    if m < 3:
        raise DomainError(f"need m >= 3, got {m}")
    w = wsgd_weights(gamma, m)
    col = np.empty(m - 1)
    col[0] = 2.0 * w[1]
    col[1] = w[0] + w[2]
    col[2:] = w[3:m]
    return col


def lower_toeplitz_matrix(gamma: float, m: int) -> np.ndarray:
    """Dense ``A`` (or ``B``): ``A[i, j] = w_{i-j+1}`` for ``j <= i + 1``, else 0."""
    w = wsgd_weights(gamma, m)
    n = m - 1
    A = np.zeros((n, n))
    for i in range(n):
        for j in range(min(i + 2, n)):
            A[i, j] = w[i - j + 1]
    return A


@dataclass(frozen=True)
class RieszSystem:
    """The assembled matrix ``D`` of one CN step, held as its first column."""

    alpha: FractionalOrder
    beta: FractionalOrder
    K_alpha: float
    K_beta: float
    mu_alpha: float
    mu_beta: float
    d_col: np.ndarray = field(repr=False, compare=False)

    @property
    def size(self) -> int:
        return len(self.d_col)

    def dense(self) -> np.ndarray:
        return toeplitz(self.d_col)


def _as_order(value, regime_ctor) -> FractionalOrder:
    return value if isinstance(value, FractionalOrder) else regime_ctor(value)


def assemble_system(grid: Grid, alpha, beta, K_alpha: float, K_beta: float) -> RieszSystem:
    """Build ``D`` for ``grid``; ``alpha``/``beta`` may be floats or orders."""
    alpha = _as_order(alpha, FractionalOrder.advection)
    beta = _as_order(beta, FractionalOrder.dispersion)
    if K_alpha < 0:
        raise DomainError(f"K_alpha must be >= 0, got {K_alpha}")
    if not K_beta > 0:
        raise DomainError(f"K_beta must be > 0 (flow from left to right), got {K_beta}")
    h, tau = grid.h, grid.tau
    mu_a = tau * K_alpha * riesz_constant(alpha.gamma) / (2.0 * h**alpha.gamma)
    mu_b = tau * K_beta * riesz_constant(beta.gamma) / (2.0 * h**beta.gamma)
    d_col = mu_a * riesz_toeplitz_column(alpha.gamma, grid.m) + mu_b * riesz_toeplitz_column(
        beta.gamma, grid.m
    )
    d_col.setflags(write=False)
    return RieszSystem(alpha, beta, float(K_alpha), float(K_beta), mu_a, mu_b, d_col)


def toeplitz_matvec_direct(col: np.ndarray, v: np.ndarray) -> np.ndarray:
    """O(n^2) symmetric Toeplitz product, ``out_i = sum_j col[|i-j|] v_j``."""
    n = len(col)
    out = np.empty(n)
    for i in range(n):
        out[i] = np.dot(col[i::-1], v[: i + 1]) + np.dot(col[1 : n - i], v[i + 1 :])
    return out


def apply_D(sys: RieszSystem, v, method: str = "auto") -> np.ndarray:
    """Return ``D @ v`` without forming ``D``.

    ``method`` is ``"direct"`` (O(m^2) reference), ``"fft"`` or ``"auto"``.
    """
    v = np.asarray(v, dtype=float)
    if v.shape != (sys.size,):
        raise ValueError(f"expected vector of length {sys.size}, got shape {v.shape}")
    if method == "auto":
        method = "fft" if sys.size > FFT_THRESHOLD else "direct"
    if method == "direct":
        return toeplitz_matvec_direct(sys.d_col, v)
    if method == "fft":
        return matmul_toeplitz(sys.d_col, v)
    raise ValueError(f"unknown matvec method {method!r}")
