"""Seeded multi-trial execution, exact oracles, and CSV/JSON emission.

Trial ``t`` runs with seed ``config.seed + t`` on its own Rng, so trials can
run in worker processes and the output, assembled in trial order afterwards,
does not depend on how many workers there were.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..core import Rng, RunRecord, RunTrace
from ..errors import CapacityError, ConfigError, SizeError
from ..gqa import run_gqa
from ..grover_rqga import GroverBudget, find_maximum, rqga
from ..problems import (
    TSP_BRUTEFORCE_LIMIT,
    F6Problem,
    KnapsackProblem,
    OneMax,
    TspProblem,
    knapsack_oracle_dp,
    tsp_oracle_bruteforce,
)
from ..pulse_eda import run_qiea
from ..qiga import run_qiga
from ..swarm_qea import run_qea, run_qse
from .config import QUANTUM_ALGORITHMS, SCHEMA_VERSION, BenchConfig, ProblemSpec, build_params

CSV_HEADER = (
    "schema_version", "algo", "problem", "trial", "seed",
    "generation", "best_fitness", "mean_fitness", "evals",
)

SUMMARY_KEYS = (
    "schema_version", "algo", "problem", "trials", "best", "mean", "std",
    "success_rate", "oracle_value", "oracle_method", "total_evals", "grover_iterations",
)


@dataclass(frozen=True)
class OracleResult:
    value: float
    method: str
    maximize: bool = True


def run_oracle(problem: ProblemSpec) -> OracleResult:
    """Exact optimum of a desk-scale instance, tagged with how it was obtained."""
    inst = problem.instance
    if problem.kind == "knapsack":
        try:
            return OracleResult(knapsack_oracle_dp(inst), "dp")
        except CapacityError as exc:
            raise SizeError(f"{exc}; reduce the item count or capacity") from None
    if problem.kind == "tsp":
        if inst.n > TSP_BRUTEFORCE_LIMIT:
            raise SizeError(
                f"brute-force TSP oracle handles at most {TSP_BRUTEFORCE_LIMIT} cities, got {inst.n}; "
                "use a smaller instance"
            )
        return OracleResult(tsp_oracle_bruteforce(inst)[1], "bruteforce", maximize=False)
    if problem.kind == "f6":
        # sin(0) = 0 gives 0.5 + 0.5 / 1 at the origin, the bound of the printed form
        return OracleResult(1.0, "analytic")
    if problem.kind == "onemax":
        return OracleResult(float(inst), "analytic")
    if problem.kind == "table":
        return OracleResult(float(max(inst)), "scan")
    raise ConfigError(f"problem: no oracle for kind {problem.kind!r}")


def make_problem(spec: ProblemSpec):
    if spec.kind == "knapsack":
        return KnapsackProblem(spec.instance)
    if spec.kind == "onemax":
        return OneMax(spec.instance)
    if spec.kind == "tsp":
        return TspProblem(spec.instance)
    if spec.kind == "f6":
        return F6Problem(spec.instance)
    return list(spec.instance)


def _budget(params) -> GroverBudget:
    keys = ("growth", "total_factor", "max_total")
    return GroverBudget(**{k: params[k] for k in keys if k in params})


def _quantum_record(algo: str, seed: int, thresholds, queries, total_queries, best_ind, best, iterations) -> RunRecord:
    # one row per accepted threshold, then one closing row for the search that came back empty
    trace = RunTrace(maximize=True)
    for value, q in zip(thresholds, queries):
        trace.log(value, value, q)
    trace.log(thresholds[-1], thresholds[-1], total_queries)
    return RunRecord(algo, seed, trace, best_ind, best, total_queries, True, {"grover_iterations": iterations})


def run_trial(cfg: BenchConfig, trial: int) -> RunRecord:
    """Run one trial; capacity and size errors carry the trial index."""
    seed = cfg.seed + trial
    rng = Rng(seed)
    problem = make_problem(cfg.problem)
    try:
        if cfg.algorithm == "rqga":
            p = cfg.params
            table_max = int(np.max(problem.fitness_table()))
            m = p.get("fitness_qubits") or max(1, table_max.bit_length())
            res = rqga(problem, m, _budget(p), rng, p.get("f_max_bound"), p.get("engine", "auto"))
            return _quantum_record(
                "rqga", seed, res.threshold_trace, res.query_trace, res.oracle_queries,
                res.individual, res.best_fitness, res.iterations,
            )
        if cfg.algorithm == "grovermax":
            p = cfg.params
            res = find_maximum(problem, _budget(p), rng, p.get("engine", "auto"), p.get("max_total_iterations"))
            return _quantum_record(
                "grovermax", seed, res.threshold_trace, res.query_trace, res.oracle_queries,
                res.index, res.value, res.iterations,
            )
        params = build_params(cfg.algorithm, cfg.params, cfg.generations)
        runner = {"qiga": run_qiga, "gqa": run_gqa, "qea": run_qea, "qse": run_qse, "qiea": run_qiea}
        return runner[cfg.algorithm](problem, params, rng)
    except (CapacityError, SizeError) as exc:
        err = type(exc)(f"trial {trial}: {exc}")
        err.trial = trial
        raise err from exc


def _run_trial_star(args):
    return run_trial(*args)


@dataclass(frozen=True)
class BenchSummary:
    algo: str
    problem: str
    trials: int
    best: float
    mean: float
    std: float
    success_rate: float | None
    oracle_value: float | None
    oracle_method: str | None
    total_evals: int
    grover_iterations: int | None

    def to_dict(self) -> dict:
        d = {"schema_version": SCHEMA_VERSION}
        d.update({k: getattr(self, k) for k in SUMMARY_KEYS[1:]})
        return d


def is_success(value: float, oracle: OracleResult, tolerance: float) -> bool:
    """Within ``tolerance`` (relative) of the optimum, in the problem's direction."""
    if oracle.maximize:
        return value >= (1.0 - tolerance) * oracle.value
    return value <= (1.0 + tolerance) * oracle.value


def summarize(cfg: BenchConfig, records: list[RunRecord], oracle: OracleResult | None) -> BenchSummary:
    finals = np.array([r.trace.rows[-1].best_fitness for r in records], dtype=float)
    maximize = records[0].maximize
    if oracle is not None:
        rate = sum(is_success(v, oracle, cfg.success_tolerance) for v in finals) / len(finals)
    else:
        rate = None
    grover = None
    if cfg.algorithm in QUANTUM_ALGORITHMS:
        grover = int(sum(r.extra["grover_iterations"] for r in records))
    return BenchSummary(
        algo=cfg.algorithm,
        problem=cfg.problem.name,
        trials=len(records),
        best=float(finals.max() if maximize else finals.min()),
        mean=float(finals.mean()),
        std=float(finals.std()),
        success_rate=None if rate is None else float(rate),
        oracle_value=None if oracle is None else float(oracle.value),
        oracle_method=None if oracle is None else oracle.method,
        total_evals=int(sum(r.evals for r in records)),
        grover_iterations=grover,
    )


def run_bench(cfg: BenchConfig) -> tuple[list[RunRecord], BenchSummary]:
    jobs = [(cfg, t) for t in range(cfg.trials)]
    if cfg.jobs > 1 and cfg.trials > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.jobs, cfg.trials)) as pool:
            records = list(pool.map(_run_trial_star, jobs))
    else:
        records = [run_trial(c, t) for c, t in jobs]
    try:
        oracle = run_oracle(cfg.problem)
    except SizeError:
        # the runs still stand; success is just not measurable
        oracle = None
    return records, summarize(cfg, records, oracle)


# --------------------------------------------------------------------------- emission


def _num(x: float) -> str:
    x = float(x)
    if x.is_integer() and math.isfinite(x):
        return str(int(x))
    return repr(x)


def trace_csv(cfg: BenchConfig, records: list[RunRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for trial, rec in enumerate(records):
        for row in rec.trace.rows:
            w.writerow([
                SCHEMA_VERSION, cfg.algorithm, cfg.problem.name, trial, rec.seed,
                row.index, _num(row.best_fitness), _num(row.mean_fitness), row.evals,
            ])
    return buf.getvalue()


def summary_json(summary: BenchSummary) -> str:
    return json.dumps(summary.to_dict(), indent=2) + "\n"


def render(cfg: BenchConfig, records: list[RunRecord], summary: BenchSummary) -> str:
    return trace_csv(cfg, records) if cfg.format == "csv" else summary_json(summary)
