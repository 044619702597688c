"""Refinement studies and their CSV / plain-text tables."""

from __future__ import annotations

import csv
import io
import itertools
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from rsfade.discretization import Grid
from rsfade.errors import ConfigError
from rsfade.extrapolation import rem_solve
from rsfade.harness.config import RunConfig, load_problem
from rsfade.stepper import integrate

log = logging.getLogger(__name__)

CSV_HEADER = ("h", "tau", "error", "order", "norm", "alpha", "beta", "rem")
NA = "n/a"


def error_norm(err: np.ndarray, h: float, norm: str) -> float:
    """Max norm, or the discrete ``L2`` norm ``sqrt(h * sum e_i^2)``, over interior nodes."""
    err = np.asarray(err, dtype=float)
    if norm == "max":
        return float(np.max(np.abs(err))) if err.size else 0.0
    if norm == "l2":
        return float(math.sqrt(h * float(np.dot(err, err))))
    raise ConfigError(f"unknown norm {norm!r}")


def observed_order(e_coarse: float, e_fine: float, h_coarse: float, h_fine: float) -> float | None:
    """``log(E_c/E_f) / log(h_c/h_f)``; ``None`` when undefined (zero errors)."""
    if not (e_coarse > 0 and e_fine > 0) or not (math.isfinite(e_coarse) and math.isfinite(e_fine)):
        return None
    return math.log2(e_coarse / e_fine) / math.log2(h_coarse / h_fine)


@dataclass(frozen=True)
class ConvergenceRow:
    h: float
    tau: float
    error: float
    order: float | None
    wall_time: float = field(default=0.0, compare=False)


@dataclass(frozen=True)
class ConvergenceSeries:
    alpha: float
    beta: float
    rows: tuple[ConvergenceRow, ...]

    @property
    def errors(self) -> list[float]:
        return [r.error for r in self.rows]

    @property
    def orders(self) -> list[float | None]:
        return [r.order for r in self.rows]


@dataclass(frozen=True)
class ConvergenceReport:
    norm: str
    rem: bool
    series: tuple[ConvergenceSeries, ...]
    problem: str = field(default="", compare=False)

    def get(self, alpha: float, beta: float) -> ConvergenceSeries:
        for s in self.series:
            if s.alpha == alpha and s.beta == beta:
                return s
        raise KeyError((alpha, beta))

    def rounded(self) -> ConvergenceReport:
        """The report as it survives a CSV round trip (6 significant digits)."""

        def r6(v):
            return None if v is None else float(_fmt(v))

        return ConvergenceReport(
            self.norm, self.rem,
            tuple(ConvergenceSeries(s.alpha, s.beta, tuple(
                ConvergenceRow(r6(r.h), r6(r.tau), r6(r.error), r6(r.order)) for r in s.rows))
                for s in self.series),
            self.problem,
        )


def _series_rows(ms, hs, taus, errors, walls) -> tuple[ConvergenceRow, ...]:
    rows = []
    for k in range(len(ms)):
        order = None if k == 0 else observed_order(errors[k - 1], errors[k], hs[k - 1], hs[k])
        rows.append(ConvergenceRow(hs[k], taus[k], errors[k], order, walls[k]))
    return tuple(rows)


def _run_point(config: RunConfig, alpha: float, beta: float, m: int):
    problem = load_problem(config.problem, alpha, beta)
    if not problem.has_exact:
        raise ConfigError(f"problem {problem.name!r} has no exact solution; cannot measure errors")
    h = problem.L / m
    grid = Grid.uniform(problem.L, m, config.T, config.tau_ratio * h)
    start = time.perf_counter()
    if config.rem:
        u = rem_solve(problem, grid, config.choice)
    else:
        u = integrate(problem, grid, config.choice).final
    wall = time.perf_counter() - start
    err = u - problem.exact(grid.interior, grid.T)
    return grid.h, grid.tau, error_norm(err, grid.h, config.norm), wall


def run_convergence(config: RunConfig) -> ConvergenceReport:
    """Solve every ``(alpha, beta, m)`` point and tabulate errors and orders.

    Points run in a thread pool of ``config.threads`` workers; the report is
    ordered by ``(alpha, beta, m)`` regardless of completion order.
    """
    alphas = config.alpha
    betas = config.beta
    if config.problem == "example1":
        alphas = alphas[:1]  # K_alpha = 0: alpha plays no role
    points = list(itertools.product(alphas, betas, config.ladder))
    load_problem(config.problem, alphas[0], betas[0])  # fail fast on bad problem ids
    if config.threads > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            results = list(pool.map(lambda p: _run_point(config, *p), points))
    else:
        results = [_run_point(config, *p) for p in points]
    by_point = dict(zip(points, results))

    series = []
    for alpha, beta in itertools.product(alphas, betas):
        res = [by_point[(alpha, beta, m)] for m in config.ladder]
        hs, taus, errs, walls = (list(col) for col in zip(*res))
        series.append(ConvergenceSeries(alpha, beta, _series_rows(config.ladder, hs, taus, errs, walls)))
        log.info("alpha=%g beta=%g errors=%s", alpha, beta, errs)
    return ConvergenceReport(config.norm, config.rem, tuple(series), config.problem)


# ---------------------------------------------------------------------------
# Output


def _fmt(value: float) -> str:
    return f"{value:.5e}"


def to_csv(report: ConvergenceReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for s in report.series:
        for r in s.rows:
            writer.writerow([
                _fmt(r.h), _fmt(r.tau), _fmt(r.error),
                NA if r.order is None else _fmt(r.order),
                report.norm, _fmt(s.alpha), _fmt(s.beta), "true" if report.rem else "false",
            ])
    return buf.getvalue()


def parse_csv(text: str) -> ConvergenceReport:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if tuple(header or ()) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {header}")
    norm, rem = "max", False
    grouped: dict[tuple[float, float], list[ConvergenceRow]] = {}
    for rec in reader:
        h, tau, err, order, norm, alpha, beta, rem_s = rec
        rem = rem_s == "true"
        row = ConvergenceRow(float(h), float(tau), float(err), None if order == NA else float(order))
        grouped.setdefault((float(alpha), float(beta)), []).append(row)
    series = tuple(ConvergenceSeries(a, b, tuple(rows)) for (a, b), rows in grouped.items())
    return ConvergenceReport(norm, rem, series)


def read_csv(path) -> ConvergenceReport:
    return parse_csv(Path(path).read_text())


def _h_label(h: float) -> str:
    frac = Fraction(h).limit_denominator(100000)
    if frac.numerator == 1 and abs(float(frac) - h) < 1e-12:
        return f"1/{frac.denominator}"
    return f"{h:.4g}"


def format_text_table(report: ConvergenceReport) -> str:
    """Aligned table: one block per alpha with beta columns, or a single
    block with alpha columns when beta is fixed."""
    alphas = list(dict.fromkeys(s.alpha for s in report.series))
    betas = list(dict.fromkeys(s.beta for s in report.series))
    if not report.series:
        return f"{'REM' if report.rem else 'CN'} errors ({report.norm} norm): no runs\n"
    if len(betas) > 1 or len(alphas) == 1:
        blocks = [(f"alpha={a}" if report.problem != "example1" else "tau=h", [(f"beta={s.beta}", s) for s in report.series if s.alpha == a])
                  for a in alphas]
    else:
        blocks = [(f"beta={betas[0]}", [(f"alpha={s.alpha}", s) for s in report.series])]
    title = f"{'REM' if report.rem else 'CN'} errors ({report.norm} norm)"
    if report.problem:
        title += f", {report.problem}"
    lines = [title]
    for block_label, cols in blocks:
        if not cols:
            continue
        head1 = f"{block_label:>12} |" + "".join(f" {label:^21} |" for label, _ in cols)
        head2 = f"{'h':>12} |" + "".join(f" {'||E||':>11} {'Order':>9} |" for _ in cols)
        rule = "-" * len(head1)
        lines += [rule, head1, head2, rule]
        for k in range(len(cols[0][1].rows)):
            row = cols[0][1].rows[k]
            cells = []
            for _, s in cols:
                r = s.rows[k]
                order = "" if r.order is None else f"{r.order:.2f}"
                cells.append(f" {r.error:11.4E} {order:>9} |")
            lines.append(f"{_h_label(row.h):>12} |" + "".join(cells))
        lines.append(rule)
    return "\n".join(lines) + "\n"


def emit_table(report: ConvergenceReport, path) -> tuple[Path, Path]:
    """Write ``path`` (CSV) and ``path`` with a ``.txt`` suffix (aligned table)."""
    path = Path(path)
    text_path = path.with_suffix(".txt")
    path.write_text(to_csv(report), newline="")
    text_path.write_text(format_text_table(report))
    return path, text_path
