"""Convergence studies, table/profile output and the command-line interface."""

from rsfade.harness.config import RunConfig, load_problem
from rsfade.harness.convergence import (
    ConvergenceReport,
    ConvergenceRow,
    ConvergenceSeries,
    emit_table,
    format_text_table,
    read_csv,
    run_convergence,
)
from rsfade.harness.profile import emit_profile

__all__ = [
    "ConvergenceReport",
    "ConvergenceRow",
    "ConvergenceSeries",
    "RunConfig",
    "emit_profile",
    "emit_table",
    "format_text_table",
    "load_problem",
    "read_csv",
    "run_convergence",
]
