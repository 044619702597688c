"""Run configuration and problem lookup (built-in names or ``file:<path>`` JSON)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from rsfade.errors import ConfigError
from rsfade.linsolve import SolverChoice, SolverKind
from rsfade.problems import BUILTIN, ProblemSpec, builtin

NORMS = ("max", "l2")


@dataclass
class RunConfig:
    problem: str = "example1"
    alpha: list[float] = field(default_factory=lambda: [0.5])
    beta: list[float] = field(default_factory=lambda: [1.5])
    ladder: list[int] = field(default_factory=lambda: [8, 16, 32, 64, 128])
    T: float = 1.0
    tau_ratio: float = 1.0
    norm: str = "max"
    rem: bool = False
    solver: str = "dense"
    cg_tol: float = 1e-12
    threads: int = 1
    out: str | None = None
    # single-run (``solve``) settings
    m: int = 64
    tau: float | None = None
    times: list[float] | None = None

    def __post_init__(self) -> None:
        self.alpha = [float(a) for a in _as_list(self.alpha)]
        self.beta = [float(b) for b in _as_list(self.beta)]
        self.ladder = [int(m) for m in _as_list(self.ladder)]
        if self.times is not None:
            self.times = [float(t) for t in _as_list(self.times)]
        if self.norm not in NORMS:
            raise ConfigError(f"norm must be one of {NORMS}, got {self.norm!r}")
        if self.solver not in {k.value for k in SolverKind}:
            raise ConfigError(f"unknown solver {self.solver!r}")
        if any(b <= a for a, b in zip(self.ladder, self.ladder[1:])):
            raise ConfigError(f"ladder must be strictly increasing, got {self.ladder}")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        if not self.tau_ratio > 0:
            raise ConfigError("tau_ratio must be positive")

    @property
    def choice(self) -> SolverChoice:
        return SolverChoice(SolverKind(self.solver), cg_tol=self.cg_tol)

    @classmethod
    def keys(cls) -> set[str]:
        return {f.name for f in fields(cls)}

    @classmethod
    def from_mapping(cls, data: dict) -> RunConfig:
        unknown = set(data) - cls.keys()
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_file(cls, path, overrides: dict | None = None) -> RunConfig:
        data = json.loads(Path(path).read_text())
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a flat JSON object")
        data.update({k: v for k, v in (overrides or {}).items() if v is not None})
        return cls.from_mapping(data)


def _as_list(value):
    if value is None:
        return []
    if isinstance(value, str):
        return [v for v in value.replace(",", " ").split()]
    if np.isscalar(value):
        return [value]
    return list(value)


def _compile(expr: str | float | None, with_t: bool):
    """Turn an expression in ``x`` (and ``t``) into a vectorized numpy function."""
    if expr is None:
        return None
    import sympy

    x, t = sympy.symbols("x t")
    parsed = sympy.sympify(str(expr), locals={"x": x, "t": t, "pi": sympy.pi})
    fn = sympy.lambdify((x, t), parsed, modules="numpy")

    def space_time(xx, tt):
        xx = np.asarray(xx, dtype=float)
        return np.broadcast_to(np.asarray(fn(xx, tt), dtype=float), xx.shape).copy()

    if with_t:
        return space_time
    return lambda xx: space_time(xx, 0.0)


def problem_from_file(path, alpha: float | None = None, beta: float | None = None) -> ProblemSpec:
    """Load a problem from JSON with keys ``L, alpha, beta, K_alpha, K_beta, psi, f, exact``.

    ``psi``, ``f`` and ``exact`` are expressions in ``x`` and ``t``.
    """
    data = json.loads(Path(path).read_text())
    try:
        return ProblemSpec(
            L=float(data.get("L", 1.0)),
            alpha=float(alpha if alpha is not None else data["alpha"]),
            beta=float(beta if beta is not None else data["beta"]),
            K_alpha=float(data.get("K_alpha", 0.0)),
            K_beta=float(data.get("K_beta", 1.0)),
            psi=_compile(data.get("psi", "0"), with_t=False),
            f=_compile(data.get("f", "0"), with_t=True),
            exact=_compile(data.get("exact"), with_t=True),
            name=f"file:{path}",
        )
    except KeyError as exc:
        raise ConfigError(f"problem file {path} is missing key {exc}") from None


def load_problem(name: str, alpha: float, beta: float) -> ProblemSpec:
    if name.startswith("file:"):
        return problem_from_file(name[len("file:"):], alpha, beta)
    if name not in BUILTIN:
        raise ConfigError(f"unknown problem {name!r}; choose from {BUILTIN} or file:<path>")
    return builtin(name, alpha, beta)
