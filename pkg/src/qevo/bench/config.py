"""Benchmark configuration: loading, defaults, problem resolution and validation.

A config is a JSON object::

    {"algorithm": "gqa",
     "problem": "knapsack20.json",          # path, or an inline object
     "params": {"chromosomes": 10},
     "seed": 1, "trials": 30, "generations": 500,
     "output": "gqa.csv", "format": "csv"}

Inline problems either carry instance data directly (the same keys as the
instance files) or name a generator through ``kind``:
``random_knapsack {n, seed}``, ``random_tsp {n, seed}``, ``random_table
{size, seed, high}``, ``onemax {length}``, ``f6 {lower, upper}``.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from ..core import Rng
from ..errors import ConfigError, QevoError
from ..gqa import GqaParams
from ..problems import (
    F6Domain,
    KnapsackInstance,
    TspInstance,
    instance_from_json,
    random_knapsack,
    random_tsp,
)
from ..pulse_eda import QieaParams
from ..qiga import QigaParams
from ..swarm_qea import QeaParams, QseParams

SCHEMA_VERSION = 1

# algorithm id -> problem kinds it accepts
ALGORITHMS: dict[str, tuple[str, ...]] = {
    "qiga": ("tsp",),
    "gqa": ("knapsack", "onemax"),
    "qea": ("knapsack", "onemax"),
    "qse": ("knapsack", "onemax", "tsp"),
    "qiea": ("f6",),
    "rqga": ("knapsack", "onemax"),
    "grovermax": ("table",),
}

QUANTUM_ALGORITHMS = frozenset({"rqga", "grovermax"})

PARAM_CLASSES = {
    "qiga": QigaParams,
    "gqa": GqaParams,
    "qea": QeaParams,
    "qse": QseParams,
    "qiea": QieaParams,
}

# keys accepted by the Grover-based algorithms
QUANTUM_PARAM_KEYS = {
    "rqga": {"fitness_qubits", "f_max_bound", "growth", "total_factor", "max_total", "engine"},
    "grovermax": {"growth", "total_factor", "max_total", "engine", "max_total_iterations"},
}

CONFIG_KEYS = {
    "algorithm", "problem", "params", "seed", "trials", "generations",
    "output", "format", "success_tolerance", "jobs",
}


@dataclass(frozen=True)
class ProblemSpec:
    kind: str
    name: str
    instance: Any  # KnapsackInstance | TspInstance | F6Domain | list[int] | int (onemax length)
    source: Any = None  # the raw path or inline object, for error messages


@dataclass(frozen=True)
class BenchConfig:
    algorithm: str
    problem: ProblemSpec
    params: Mapping[str, Any] = field(default_factory=dict)
    seed: int = 0
    trials: int = 1
    generations: int = 500
    output: str | None = None
    format: str = "csv"
    success_tolerance: float = 0.05
    jobs: int = 1

    def with_overrides(self, **changes) -> "BenchConfig":
        return validate(dataclasses.replace(self, **changes))


def _kind_of(instance) -> str:
    if isinstance(instance, KnapsackInstance):
        return "knapsack"
    if isinstance(instance, TspInstance):
        return "tsp"
    if isinstance(instance, F6Domain):
        return "f6"
    return "table"


def _generated(data: dict) -> ProblemSpec:
    kind = data["kind"]
    try:
        if kind == "random_knapsack":
            n, seed = int(data["n"]), int(data.get("seed", 0))
            return ProblemSpec("knapsack", f"random_knapsack_n{n}_s{seed}", random_knapsack(n, Rng(seed)), data)
        if kind == "random_tsp":
            n, seed = int(data["n"]), int(data.get("seed", 0))
            return ProblemSpec("tsp", f"random_tsp_n{n}_s{seed}", random_tsp(n, Rng(seed)), data)
        if kind == "random_table":
            size, seed = int(data["size"]), int(data.get("seed", 0))
            high = int(data.get("high", 256))
            values = Rng(seed).integers(0, high, size).tolist()
            return ProblemSpec("table", f"random_table_{size}_s{seed}", values, data)
        if kind == "onemax":
            length = int(data["length"])
            if length < 1:
                raise ConfigError("problem.length: OneMax needs length >= 1")
            return ProblemSpec("onemax", f"onemax_{length}", length, data)
    except KeyError as exc:
        raise ConfigError(f"problem.{exc.args[0]}: required for kind {kind!r}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"problem: bad {kind!r} generator arguments ({exc})") from None
    if kind == "f6":
        body = {k: v for k, v in data.items() if k != "kind"}
        return ProblemSpec("f6", "f6", F6Domain.from_dict(body) if body else F6Domain(), data)
    if kind in ("knapsack", "tsp", "table"):
        body = data.get("values") if kind == "table" else {k: v for k, v in data.items() if k != "kind"}
        inst = instance_from_json(body)
        if _kind_of(inst) != kind:
            raise ConfigError(f"problem.kind: data does not describe a {kind} instance")
        return ProblemSpec(kind, kind, inst, data)
    raise ConfigError(f"problem.kind: unknown problem kind {kind!r}")


def resolve_problem(problem, base_dir: Path | None = None) -> ProblemSpec:
    """Turn a path or inline object into a ProblemSpec."""
    try:
        if isinstance(problem, (str, Path)):
            path = Path(problem)
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            try:
                data = json.loads(path.read_text())
            except OSError as exc:
                raise ConfigError(f"problem: cannot read {path} ({exc.strerror})") from None
            except json.JSONDecodeError as exc:
                raise ConfigError(f"problem: {path} is not valid JSON ({exc.msg})") from None
            if isinstance(data, dict) and "kind" in data:
                spec = _generated(data)
                return dataclasses.replace(spec, name=path.stem, source=str(problem))
            inst = instance_from_json(data)
            return ProblemSpec(_kind_of(inst), path.stem, inst, str(problem))
        if isinstance(problem, dict):
            if "kind" in problem:
                return _generated(problem)
            inst = instance_from_json(problem)
            return ProblemSpec(_kind_of(inst), _kind_of(inst), inst, problem)
        if isinstance(problem, list):
            inst = instance_from_json(problem)
            return ProblemSpec("table", "table", inst, problem)
    except ConfigError:
        raise
    except (QevoError, ValueError, TypeError) as exc:
        raise ConfigError(f"problem: invalid instance ({exc})") from None
    raise ConfigError("problem: expected a file path or an inline object")


def _check_int(name: str, value, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{name}: expected an integer, got {value!r}")
    if value < minimum:
        raise ConfigError(f"{name}: must be >= {minimum}, got {value}")
    return value


def build_params(algorithm: str, params: Mapping[str, Any], generations: int):
    """Instantiate the algorithm's parameter object (classical algorithms only)."""
    cls = PARAM_CLASSES[algorithm]
    names = {f.name for f in dataclasses.fields(cls)}
    for key in params:
        if key not in names or key == "generations":
            raise ConfigError(f"params.{key}: not a parameter of {algorithm}")
    try:
        return cls(**params, generations=generations)
    except (QevoError, ValueError, TypeError) as exc:
        raise ConfigError(f"params: {exc}") from None


def validate(cfg: BenchConfig) -> BenchConfig:
    if cfg.algorithm not in ALGORITHMS:
        raise ConfigError(f"algorithm: unknown algorithm id {cfg.algorithm!r} (known: {', '.join(ALGORITHMS)})")
    if cfg.problem.kind not in ALGORITHMS[cfg.algorithm]:
        raise ConfigError(
            f"problem: incompatible problem {cfg.problem.kind!r} for {cfg.algorithm} "
            f"(needs {' or '.join(ALGORITHMS[cfg.algorithm])})"
        )
    seed = _check_int("seed", cfg.seed, 0)
    if seed >= 2**64:
        raise ConfigError("seed: must fit in 64 bits")
    _check_int("trials", cfg.trials, 1)
    _check_int("generations", cfg.generations, 0)
    _check_int("jobs", cfg.jobs, 1)
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"format: expected 'csv' or 'json', got {cfg.format!r}")
    if not isinstance(cfg.success_tolerance, (int, float)) or not 0 <= cfg.success_tolerance < 1:
        raise ConfigError("success_tolerance: must lie in [0, 1)")
    if not isinstance(cfg.params, Mapping):
        raise ConfigError("params: expected an object")
    if cfg.algorithm in PARAM_CLASSES:
        build_params(cfg.algorithm, cfg.params, cfg.generations)
    else:
        allowed = QUANTUM_PARAM_KEYS[cfg.algorithm]
        for key in cfg.params:
            if key not in allowed:
                raise ConfigError(f"params.{key}: not a parameter of {cfg.algorithm}")
    return cfg


def load_config(path: str | Path | None = None, **overrides) -> BenchConfig:
    """Read a JSON config file (optional) and apply overrides; overrides win.

    Override keys are the config keys; ``None`` values are ignored so CLI
    flags that were not given leave the file untouched.
    """
    raw: dict[str, Any] = {}
    base_dir = None
    if path is not None:
        path = Path(path)
        try:
            raw = json.loads(path.read_text())
        except OSError as exc:
            raise ConfigError(f"config: cannot read {path} ({exc.strerror})") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config: {path} is not valid JSON ({exc.msg} at line {exc.lineno})") from None
        if not isinstance(raw, dict):
            raise ConfigError("config: top level must be a JSON object")
        base_dir = path.parent
    for key, value in overrides.items():
        if value is not None:
            raw[key] = value
    unknown = sorted(set(raw) - CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"{unknown[0]}: unknown config key")
    for key in ("algorithm", "problem"):
        if key not in raw:
            raise ConfigError(f"{key}: missing required key")
    # a problem path given as a flag is relative to the working directory
    problem_base = None if "problem" in overrides and overrides["problem"] is not None else base_dir
    cfg = BenchConfig(
        algorithm=raw["algorithm"],
        problem=resolve_problem(raw["problem"], problem_base),
        params=dict(raw.get("params", {})) if isinstance(raw.get("params", {}), dict) else raw["params"],
        seed=raw.get("seed", 0),
        trials=raw.get("trials", 1),
        generations=raw.get("generations", 500),
        output=raw.get("output"),
        format=raw.get("format", "csv"),
        success_tolerance=raw.get("success_tolerance", 0.05),
        jobs=raw.get("jobs", 1),
    )
    return validate(cfg)
