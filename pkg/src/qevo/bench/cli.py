"""``qevo-bench``: run, sweep, oracle and list.

Exit codes: 0 success, 2 config error, 3 capacity or size error, 4 any other failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..errors import CapacityError, ConfigError, SizeError
from .config import ALGORITHMS, SCHEMA_VERSION, load_config, resolve_problem
from .harness import render, run_bench, run_oracle

EXIT_OK, EXIT_CONFIG, EXIT_CAPACITY, EXIT_RUNTIME = 0, 2, 3, 4


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_value(token: str):
    try:
        return json.loads(token)
    except json.JSONDecodeError:
        return token


def _flags(args) -> dict:
    return {
        "algorithm": args.algo,
        "problem": None if args.problem is None else _parse_problem_arg(args.problem),
        "seed": args.seed,
        "trials": args.trials,
        "generations": args.generations,
        "output": getattr(args, "out", None),
        "format": getattr(args, "format", None),
        "jobs": args.jobs,
    }


def cmd_run(args) -> int:
    cfg = load_config(args.config, **_flags(args))
    records, summary = run_bench(cfg)
    _emit(render(cfg, records, summary), cfg.output)
    if cfg.output:
        print(f"{cfg.algorithm} on {cfg.problem.name}: best {summary.best}, success {summary.success_rate}",
              file=sys.stderr)
    return EXIT_OK


def cmd_sweep(args) -> int:
    key, sep, values = args.param.partition("=")
    if not sep or not key or not values:
        raise ConfigError("param: expected key=v1,v2,...")
    base = load_config(args.config, **_flags(args))
    runs = []
    for token in values.split(","):
        value = _parse_value(token)
        if key in ("seed", "trials", "generations", "success_tolerance"):
            cfg = base.with_overrides(**{key: value})
        else:
            cfg = base.with_overrides(params={**base.params, key: value})
        _, summary = run_bench(cfg)
        runs.append({"value": value, "summary": summary.to_dict()})
    doc = {"schema_version": SCHEMA_VERSION, "param": key, "runs": runs}
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    spec = resolve_problem(_parse_problem_arg(args.problem))
    res = run_oracle(spec)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "problem": spec.name,
        "oracle_value": res.value,
        "oracle_method": res.method,
    }
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def _parse_problem_arg(text: str):
    # a literal JSON object works as well as a path
    stripped = text.lstrip()
    if stripped.startswith("{") or stripped.startswith("["):
        try:
            return json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"problem: inline JSON does not parse ({exc.msg})") from None
    return text


def cmd_list(args) -> int:
    width = max(map(len, ALGORITHMS))
    for algo, kinds in ALGORITHMS.items():
        print(f"{algo:<{width}}  {', '.join(kinds)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qevo-bench", description="Seeded benchmark runs and exact oracles.")
    sub = parser.add_subparsers(dest="command", required=True)

    def run_flags(p):
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--algo", help="algorithm id (see `list`)")
        p.add_argument("--problem", help="problem file")
        p.add_argument("--seed", type=int)
        p.add_argument("--trials", type=int)
        p.add_argument("--generations", type=int)
        p.add_argument("--jobs", type=int, help="worker processes for trials")
        p.add_argument("--out", help="output path (stdout when omitted)")

    p_run = sub.add_parser("run", help="run trials and write traces (csv) or a summary (json)")
    run_flags(p_run)
    p_run.add_argument("--format", choices=("csv", "json"))
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="one run per value of a parameter")
    run_flags(p_sweep)
    p_sweep.add_argument("--param", required=True, help="key=v1,v2,...")
    p_sweep.set_defaults(func=cmd_sweep)

    p_oracle = sub.add_parser("oracle", help="exact optimum of a problem file")
    p_oracle.add_argument("--problem", required=True)
    p_oracle.set_defaults(func=cmd_oracle)

    p_list = sub.add_parser("list", help="algorithm ids and the problem kinds they accept")
    p_list.set_defaults(func=cmd_list)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (CapacityError, SizeError) as exc:
        print(f"size error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except Exception as exc:  # noqa: BLE001 - the exit code is the contract
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
