"""Benchmark harness and the ``qevo-bench`` command line."""

from .config import ALGORITHMS, BenchConfig, ProblemSpec, load_config, resolve_problem
from .harness import (
    CSV_HEADER,
    SUMMARY_KEYS,
    BenchSummary,
    OracleResult,
    render,
    run_bench,
    run_oracle,
    summary_json,
    trace_csv,
)

__all__ = [
    "ALGORITHMS", "BenchConfig", "ProblemSpec", "load_config", "resolve_problem",
    "CSV_HEADER", "SUMMARY_KEYS", "BenchSummary", "OracleResult",
    "render", "run_bench", "run_oracle", "summary_json", "trace_csv",
]
