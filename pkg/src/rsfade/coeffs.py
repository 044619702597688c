"""Grünwald-Letnikov coefficients and the weighted-shifted (WSGD) weights.

With shifts ``(p, q) = (1, 0)`` the WSGD weights are

.. math::

    w_0 = \\tfrac{\\gamma}{2} g_0, \\qquad
    w_k = \\tfrac{\\gamma}{2} g_k + \\tfrac{2-\\gamma}{2} g_{k-1}, \\quad k \\ge 1,

where :math:`g_k = (-1)^k \\binom{\\gamma}{k}` are the coefficients of
:math:`(1-z)^\\gamma`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from rsfade.errors import DomainError


class Regime(enum.Enum):
    ADVECTION = "advection"
    DISPERSION = "dispersion"


@dataclass(frozen=True)
class FractionalOrder:
    """A fractional order tagged with the term it belongs to.

    Advection orders live in ``(0, 1)``, dispersion orders in ``(1, 2]``.
    """

    gamma: float
    regime: Regime

    def __post_init__(self) -> None:
        g = float(self.gamma)
        object.__setattr__(self, "gamma", g)
        if self.regime is Regime.ADVECTION and not 0.0 < g < 1.0:
            raise DomainError(f"advection order must satisfy 0 < alpha < 1, got {g}")
        if self.regime is Regime.DISPERSION and not 1.0 < g <= 2.0:
            raise DomainError(f"dispersion order must satisfy 1 < beta <= 2, got {g}")

    @classmethod
    def advection(cls, alpha: float) -> FractionalOrder:
        return cls(alpha, Regime.ADVECTION)

    @classmethod
    def dispersion(cls, beta: float) -> FractionalOrder:
        return cls(beta, Regime.DISPERSION)

    @classmethod
    def infer(cls, gamma: float) -> FractionalOrder:
        """Pick the regime from the value itself (``gamma == 1`` is rejected)."""
        if 0.0 < gamma < 1.0:
            return cls.advection(gamma)
        return cls.dispersion(gamma)


def _check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not 0.0 < gamma <= 2.0:
        raise DomainError(f"fractional order must lie in (0, 2], got {gamma}")
    return gamma


def _check_count(count: int) -> int:
    if int(count) != count or count < 0:
        raise DomainError(f"coefficient count must be a nonnegative integer, got {count}")
    return int(count)


def grunwald_coeffs(gamma: float, count: int) -> np.ndarray:
    """Return ``[g_0, ..., g_count]`` for ``(1 - z)**gamma``.

    Uses the multiplicative recursion ``g_k = (1 - (gamma + 1)/k) g_{k-1}``,
    which never forms factorials.

    >>> grunwald_coeffs(0.5, 2).tolist()
    [1.0, -0.5, -0.125]
    """
    gamma = _check_gamma(gamma)
    count = _check_count(count)
    k = np.arange(1, count + 1, dtype=float)
    g = np.empty(count + 1)
    g[0] = 1.0
    if count:
        # (k - 1 - gamma)/k == 1 - (gamma+1)/k, without cancellation near gamma = k - 1
        g[1:] = np.cumprod((k - 1.0 - gamma) / k)
    return g


def wsgd_weights(gamma: float, count: int) -> np.ndarray:
    """Return the WSGD weights ``[w_0, ..., w_count]`` for shifts (1, 0)."""
    g = grunwald_coeffs(gamma, count)
    w = np.empty_like(g)
    w[0] = 0.5 * gamma * g[0]
    w[1:] = 0.5 * gamma * g[1:] + 0.5 * (2.0 - gamma) * g[:-1]
    return w


@dataclass(frozen=True)
class GrunwaldSeq:
    """Both coefficient sequences for one order, truncated at index ``n``."""

    gamma: float
    n: int
    g: np.ndarray = field(init=False, repr=False, compare=False)
    w: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "g", grunwald_coeffs(self.gamma, self.n))
        object.__setattr__(self, "w", wsgd_weights(self.gamma, self.n))
        self.g.setflags(write=False)
        self.w.setflags(write=False)


# ---------------------------------------------------------------------------
# Coefficient law checks


class CheckStatus(enum.Enum):
    PASS = "pass"
    BOUNDARY = "boundary"  # inequality holds only with equality somewhere
    FAIL = "fail"


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    status: CheckStatus
    detail: str = ""


@dataclass(frozen=True)
class CoefficientReport:
    gamma: float
    n: int
    checks: tuple[PropertyCheck, ...]

    @property
    def ok(self) -> bool:
        """True when nothing failed; boundary cases count as holding."""
        return all(c.status is not CheckStatus.FAIL for c in self.checks)

    def by_name(self, name: str) -> PropertyCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[PropertyCheck]:
        return [c for c in self.checks if c.status is CheckStatus.FAIL]


def _close(name: str, value: float, expected: float, rtol: float = 1e-13) -> PropertyCheck:
    ok = abs(value - expected) <= rtol * max(1.0, abs(expected))
    status = CheckStatus.PASS if ok else CheckStatus.FAIL
    return PropertyCheck(name, status, f"{value!r} vs {expected!r}")


def _sign(name: str, values: np.ndarray, sign: int) -> PropertyCheck:
    """All ``values`` strictly of ``sign`` (PASS), or with zeros (BOUNDARY)."""
    v = np.asarray(values) * sign
    if v.size == 0 or np.all(v > 0):
        return PropertyCheck(name, CheckStatus.PASS)
    if np.all(v >= 0):
        return PropertyCheck(name, CheckStatus.BOUNDARY, f"{int(np.sum(v == 0))} zero entries")
    bad = int(np.argmin(v))
    return PropertyCheck(name, CheckStatus.FAIL, f"first violation near offset {bad}")


def _monotone(name: str, values: np.ndarray, direction: int) -> PropertyCheck:
    """Strictly increasing (``direction=1``) or decreasing (``-1``)."""
    return _sign(name, np.diff(values), direction)


def _bounded(name: str, value: float, upper: float) -> PropertyCheck:
    status = CheckStatus.PASS if value < upper else (
        CheckStatus.BOUNDARY if value == upper else CheckStatus.FAIL)
    return PropertyCheck(name, status, f"{value!r} <= {upper!r}")


def check_coefficient_laws(seq: GrunwaldSeq) -> CoefficientReport:
    """Check the finite-length sign, monotonicity and partial-sum laws of ``seq``.

    Which laws apply depends on whether ``seq.gamma`` is an advection order
    (``0 < gamma < 1``) or a dispersion order (``1 < gamma <= 2``). Strict
    inequalities that hold only with equality (the degenerate ``gamma = 2``
    stencil) are reported as ``BOUNDARY`` rather than failures.
    """
    gamma, g, w = seq.gamma, seq.g, seq.w
    if seq.n < 3:
        raise DomainError("coefficient law checks need at least 4 coefficients")
    sg = np.cumsum(g)
    sw = np.cumsum(w)
    checks = [
        _close("g0", g[0], 1.0),
        _close("g1", g[1], -gamma),
        _close("g2", g[2], gamma * (gamma - 1.0) / 2.0),
        _close("w0", w[0], gamma / 2.0),
        _close("w1", w[1], (2.0 - gamma - gamma**2) / 2.0),
        _close("w2", w[2], gamma * (gamma**2 + gamma - 4.0) / 4.0),
    ]
    if 0.0 < gamma < 1.0:
        checks += [
            _sign("g_k < 0 (k>=1)", g[1:], -1),
            _monotone("g_1 < g_2 < ...", g[1:], 1),
            _sign("sum_{k<=m} g_k > 0 (m>=1)", sg[1:], 1),
            _monotone("|sum g| decreasing", np.abs(sg[1:]), -1),
            _sign("w1 > 0", w[1:2], 1),
            _sign("w_k < 0 (k>=2)", w[2:], -1),
            _monotone("w_2 < w_3 < ...", w[2:], 1),
            _sign("sum_{k<=m} w_k > 0 (m>=1)", sw[1:], 1),
            _monotone("|sum w| decreasing", np.abs(sw[1:]), -1),
        ]
    elif 1.0 < gamma <= 2.0:
        checks += [
            _sign("g2 > 0", g[2:3], 1),
            _bounded("g2 <= 1", g[2], 1.0),
            _sign("g_k >= 0 (k>=2)", g[2:], 1),
            _monotone("g_2 >= g_3 >= ...", g[2:], -1),
            _sign("sum_{k<=m} g_k < 0 (m>=1)", sg[1:], -1),
            _monotone("|sum g| decreasing", np.abs(sg[1:]), -1),
            _sign("w1 < 0", w[1:2], -1),
            _sign("w_k >= 0 (k>=3)", w[3:], 1),
            _monotone("w_3 >= w_4 >= ...", w[3:], -1),
            _bounded("w3 <= 1", w[3], 1.0),
            _sign("sum_{k<=m} w_k < 0 (m>=2)", sw[2:], -1),
            _monotone("|sum w| decreasing", np.abs(sw[2:]), -1),
        ]
    else:
        checks.append(PropertyCheck("regime", CheckStatus.FAIL, f"no coefficient laws for gamma={gamma}"))
    return CoefficientReport(gamma, seq.n, tuple(checks))
