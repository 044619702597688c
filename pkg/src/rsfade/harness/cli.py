"""Command-line entry point: ``solve``, ``converge``, ``rem`` and ``verify``."""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from rsfade.discretization import Grid
from rsfade.errors import ConfigError, DomainError
from rsfade.harness.config import RunConfig, load_problem
from rsfade.harness.convergence import emit_table, format_text_table, run_convergence
from rsfade.harness.profile import emit_profile
from rsfade.verify import SUITES, run_all


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.replace(",", " ").split()]


def _ints(text: str) -> list[int]:
    return [int(v) for v in text.replace(",", " ").split()]


def _flatten(values):
    if values is None:
        return None
    return [v for group in values for v in group]


def _common(p: argparse.ArgumentParser) -> None:
    # defaults are None so that --config values survive unless overridden
    p.add_argument("--config", help="flat JSON file of settings; flags override it")
    p.add_argument("--problem", help="example1 | example2 | example3 | zero | file:<path>")
    p.add_argument("--alpha", type=_floats, action="append", help="advection order(s)")
    p.add_argument("--beta", type=_floats, action="append", help="dispersion order(s)")
    p.add_argument("--T", type=float, help="final time")
    p.add_argument("--tau-ratio", dest="tau_ratio", type=float, help="tau = ratio * h (default 1)")
    p.add_argument("--solver", choices=["dense", "cg"])
    p.add_argument("--cg-tol", dest="cg_tol", type=float)
    p.add_argument("--threads", type=int)
    p.add_argument("--out", help="output path")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rsfade", description="Riesz space fractional advection-dispersion solver")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="single run; writes solution profiles")
    _common(solve)
    solve.add_argument("--m", type=int, help="number of space intervals")
    solve.add_argument("--tau", type=float, help="time step (default h * tau-ratio)")
    solve.add_argument("--times", type=_floats, action="append", help="output times (default T)")

    for name, text in (("converge", "CN refinement study"), ("rem", "extrapolated refinement study")):
        p = sub.add_parser(name, help=text)
        _common(p)
        p.add_argument("--ladder", type=_ints, action="append", help="space intervals, e.g. 8,16,32")
        p.add_argument("--norm", choices=["max", "l2"])

    verify = sub.add_parser("verify", help="run the coefficient/matrix/stability property suites")
    verify.add_argument("--suite", action="append", choices=sorted(SUITES))
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    overrides = {k: v for k, v in vars(args).items()
                 if k in RunConfig.keys() and v is not None}
    for key in ("alpha", "beta", "ladder", "times"):
        if key in overrides:
            overrides[key] = _flatten(overrides[key])
    if args.command == "rem":
        overrides["rem"] = True
    if args.config:
        return RunConfig.from_file(args.config, overrides)
    return RunConfig.from_mapping(overrides)


def cmd_solve(cfg: RunConfig) -> int:
    problems = [load_problem(cfg.problem, a, b) for a in cfg.alpha for b in cfg.beta]
    L = problems[0].L
    h = L / cfg.m
    grid = Grid.uniform(L, cfg.m, cfg.T, cfg.tau if cfg.tau is not None else cfg.tau_ratio * h)
    times = cfg.times or [grid.T]
    out = cfg.out or "profile.csv"
    data = emit_profile(problems, grid, times, out, cfg.choice)
    print(f"grid: m={grid.m} h={grid.h:.6g} N={grid.N} tau={grid.tau:.6g}")
    for (alpha, beta, t), (x, u, exact) in data.items():
        line = f"alpha={alpha:g} beta={beta:g} t={t:g}: max|u|={np.max(np.abs(u)):.6e}"
        if exact is not None:
            line += f"  max|u-exact|={np.max(np.abs(u - exact)):.6e}"
        print(line)
    print(f"wrote {out}")
    return 0


def cmd_converge(cfg: RunConfig) -> int:
    report = run_convergence(cfg)
    print(format_text_table(report), end="")
    if cfg.out:
        csv_path, txt_path = emit_table(report, cfg.out)
        print(f"wrote {csv_path} and {txt_path}")
    return 0


def cmd_verify(suites) -> int:
    results = run_all(suites)
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "verify":
        return cmd_verify(args.suite)
    try:
        cfg = config_from_args(args)
        if args.command == "solve":
            return cmd_solve(cfg)
        return cmd_converge(cfg)
    except (ConfigError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
