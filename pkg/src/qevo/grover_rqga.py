"""Grover search with an unknown number of marked states, maximum finding, and RQGA.

Unknown-count schedule: keep an estimate ``m`` (starting at 1). Each round
draws ``j`` uniformly from ``[0, ceil(m))``, prepares a fresh uniform state,
applies ``j`` Grover iterations and measures. A measured index is accepted
only after a classical check of the predicate; otherwise ``m`` grows by
``growth`` up to ``sqrt(2**N)``. The search gives up once the total iteration
budget is spent.

Maximum finding raises a threshold: start from a random index ``k``, search
for any index whose value exceeds ``value[k]``, move ``k`` there, repeat until
a search comes back empty.

RQGA is maximum finding over the fitness register of the pair
(individual, fitness). It starts from the fitness of a random individual,
marks ``f(u) > max`` through the fitness unitary, measures the fitness
register (then the individual register) after each search round, and ends
with one search marking ``f(u) == max`` whose individual-register
measurement is the answer.

Counting: ``iterations`` is the number of Grover iterations (one phase-oracle
call each). ``oracle_queries`` adds one fitness evaluation per measurement
round for the classical check of the measured candidate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Mapping, Sequence

import numpy as np

from .core import Rng
from .errors import InvalidArgumentError
from .problems import BinaryProblem, int_to_bits, scale_to_register
from .qsim import (
    FitnessUnitary,
    IndividualRegister,
    RegisterLayout,
    ThresholdPhase,
    apply_fitness_xor,
    grover_iteration,
    init_uniform,
    measure_register,
)

# pair registers above this many qubits are iterated on the individual register alone
REGISTER_ENGINE_LIMIT = 18

Engine = Literal["auto", "register", "compact"]


@dataclass(frozen=True)
class GroverBudget:
    growth: float = 6 / 5
    total_factor: float = 30.0
    max_total: int | None = None

    def __post_init__(self):
        if self.growth <= 1:
            raise InvalidArgumentError("growth factor must exceed 1")
        if self.total_factor <= 0:
            raise InvalidArgumentError("total_factor must be positive")
        if self.max_total is not None and self.max_total < 0:
            raise InvalidArgumentError("max_total must be >= 0")

    def total_for(self, n_qubits: int) -> int:
        """Total iterations allowed for one search over ``2**n_qubits`` states."""
        if self.max_total is not None:
            return self.max_total
        return math.ceil(self.total_factor * math.sqrt(2**n_qubits))

    @staticmethod
    def round_cap(n_qubits: int) -> float:
        return math.sqrt(2**n_qubits)


@dataclass
class SearchResult:
    index: int | None
    iterations: int = 0
    rounds: int = 0

    @property
    def oracle_queries(self) -> int:
        return self.iterations + self.rounds


@dataclass(frozen=True)
class ThresholdOracle:
    """Marks ``u`` where ``table[u] > threshold``."""

    table: np.ndarray
    threshold: int

    @classmethod
    def from_predicate(cls, predicate, n_qubits: int) -> "ThresholdOracle":
        d = 1 << n_qubits
        if callable(predicate):
            mask = np.array([bool(predicate(u)) for u in range(d)])
        else:
            mask = np.asarray(predicate, dtype=bool)
        if mask.shape != (d,):
            raise InvalidArgumentError(f"predicate must cover {d} indices")
        return cls(mask.astype(np.int64), 0)

    def marks(self, u: int) -> bool:
        return bool(self.table[u] > self.threshold)

    def marked(self) -> np.ndarray:
        return self.table > self.threshold


def _pick_engine(layout: RegisterLayout, engine: Engine) -> str:
    if engine == "auto":
        return "register" if layout.n_individual + layout.n_fitness <= REGISTER_ENGINE_LIMIT else "compact"
    if engine not in ("register", "compact"):
        raise InvalidArgumentError(f"unknown engine {engine!r}")
    return engine


def _round_runner(layout: RegisterLayout, oracle: ThresholdOracle, engine: str, read_fitness: bool):
    """Returns ``run(j, rng) -> measured individual`` for one prepare-iterate-measure round."""
    if engine == "compact":
        marked = oracle.marked()

        def run(j: int, rng: Rng) -> int:
            reg = IndividualRegister(layout.n_individual)
            for _ in range(j):
                reg.grover_iteration(marked)
            return reg.measure(rng)

        return run

    layout.check_capacity()
    u_fit = FitnessUnitary(layout, oracle.table)
    phase = ThresholdPhase(layout, oracle.threshold)

    def run(j: int, rng: Rng) -> int:
        state = init_uniform(layout)
        for _ in range(j):
            grover_iteration(state, u_fit, phase)
        if read_fitness:
            # write fitness, read it out, then read the individual it is entangled with
            apply_fitness_xor(state, u_fit)
            p, _ = measure_register(state, "fitness", rng)
            u, _ = measure_register(state, "individual", rng)
            if u_fit.table[u] != p:
                raise AssertionError("individual register disagrees with the measured fitness")
            return u
        u, _ = measure_register(state, "individual", rng)
        return u

    return run


def _search(n_qubits: int, oracle: ThresholdOracle, budget: GroverBudget, rng: Rng, run) -> SearchResult:
    total = budget.total_for(n_qubits)
    cap = budget.round_cap(n_qubits)
    m_est = 1.0
    res = SearchResult(None)
    while True:
        j = int(rng.uniform() * math.ceil(m_est))
        j = min(j, total - res.iterations)
        u = run(j, rng)
        res.iterations += j
        res.rounds += 1
        if oracle.marks(u):
            res.index = u
            return res
        if res.iterations >= total:
            return res
        m_est = min(m_est * budget.growth, cap)


def grover_unknown(
    oracle: ThresholdOracle,
    layout: RegisterLayout,
    budget: GroverBudget,
    rng: Rng,
    engine: Engine = "auto",
) -> SearchResult:
    """Search for any index the oracle marks; ``index`` is None if the budget runs out.

    Any returned index satisfies the oracle (checked classically before
    returning).
    """
    if layout.n_individual > 20:
        raise InvalidArgumentError("Grover search limited to 20 individual qubits")
    oracle_table = np.asarray(oracle.table)
    if oracle_table.shape != (layout.dim_individual,):
        raise InvalidArgumentError("oracle table size does not match the individual register")
    run = _round_runner(layout, oracle, _pick_engine(layout, engine), read_fitness=False)
    res = _search(layout.n_individual, oracle, budget, rng, run)
    if res.index is not None and not oracle.marks(res.index):
        raise AssertionError("search returned an unmarked index")
    return res


# --------------------------------------------------------------------------- maximum finding


@dataclass
class MaxFindResult:
    index: int
    value: int
    threshold_trace: list[int]
    iterations: int
    rounds: int
    oracle_queries: int
    # cumulative oracle queries when each threshold was accepted
    query_trace: list[int] = field(default_factory=list)


def _register_width(values: np.ndarray) -> int:
    return max(1, int(values.max()).bit_length())


def find_maximum(
    table: Sequence[int],
    budget: GroverBudget,
    rng: Rng,
    engine: Engine = "auto",
    max_total_iterations: int | None = None,
) -> MaxFindResult:
    """Index of a maximum of ``table`` by repeated Grover search for larger values."""
    values = np.asarray(table)
    if values.ndim != 1 or values.size == 0:
        raise InvalidArgumentError("table must be a nonempty 1-D sequence")
    if not np.all(values == np.round(values)) or values.min() < 0:
        raise InvalidArgumentError("table entries must be nonnegative integers")
    values = values.astype(np.int64)
    m = values.size
    n = max(1, (m - 1).bit_length())
    # padding entries hold 0, which never exceeds a threshold drawn from the table
    padded = np.zeros(1 << n, dtype=np.int64)
    padded[:m] = values
    layout = RegisterLayout(n, _register_width(values))

    k = int(rng.uniform() * m)
    trace = [int(values[k])]
    query_trace = [0]
    iterations = rounds = queries = 0
    while True:
        if max_total_iterations is not None and iterations >= max_total_iterations:
            break
        oracle = ThresholdOracle(padded, int(values[k]))
        res = grover_unknown(oracle, layout, budget, rng, engine)
        iterations += res.iterations
        rounds += res.rounds
        queries += res.oracle_queries
        if res.index is None:
            break
        k = res.index
        trace.append(int(values[k]))
        query_trace.append(queries)
    return MaxFindResult(k, int(values[k]), trace, iterations, rounds, queries, query_trace)


# --------------------------------------------------------------------------- RQGA


@dataclass
class RqgaResult:
    individual: list[int]
    index: int
    best_fitness: int
    threshold_trace: list[int] = field(default_factory=list)
    iterations: int = 0
    rounds: int = 0
    oracle_queries: int = 0
    query_trace: list[int] = field(default_factory=list)


def rqga(
    problem: BinaryProblem,
    n_fitness_qubits: int,
    budget: GroverBudget,
    rng: Rng,
    f_max_bound: float | None = None,
    engine: Engine = "auto",
) -> RqgaResult:
    """Maximize an N-bit fitness through the pair registers.

    ``best_fitness`` is the register value found by search; ``individual``
    is what the final individual-register measurement returned.
    """
    n = problem.n_bits
    layout = RegisterLayout(n, n_fitness_qubits)
    layout.check_capacity()
    table = scale_to_register(problem.fitness_table(), n_fitness_qubits, f_max_bound)
    eng = _pick_engine(layout, engine)

    u0 = int(rng.uniform() * layout.dim_individual)
    best_u, best = u0, int(table[u0])
    result = RqgaResult([], u0, best, [best], query_trace=[0])

    def account(res: SearchResult) -> None:
        result.iterations += res.iterations
        result.rounds += res.rounds
        result.oracle_queries += res.oracle_queries

    while True:
        oracle = ThresholdOracle(table, best)
        run = _round_runner(layout, oracle, eng, read_fitness=True)
        res = _search(n, oracle, budget, rng, run)
        account(res)
        if res.index is None:
            break
        best_u, best = res.index, int(table[res.index])
        result.threshold_trace.append(best)
        result.query_trace.append(result.oracle_queries)

    # read out an individual holding the final maximum: mark f(u) >= max
    oracle = ThresholdOracle(table, best - 1)
    run = _round_runner(layout, oracle, eng, read_fitness=True)
    res = _search(n, oracle, budget, rng, run)
    account(res)
    if res.index is not None:
        best_u = res.index
    result.index = best_u
    result.individual = int_to_bits(best_u, n).tolist()
    result.best_fitness = best
    return result


# --------------------------------------------------------------------------- scaling


@dataclass(frozen=True)
class ScalingFit:
    slope: float
    intercept: float
    sizes: tuple[int, ...]
    means: tuple[float, ...]


def query_stats(results: Mapping[int, Sequence[float]], min_runs: int = 50) -> ScalingFit:
    """Least-squares slope of log(mean iterations) against log(search-space size)."""
    if len(results) < 3:
        raise InvalidArgumentError("need at least 3 distinct sizes")
    sizes, means = [], []
    for size, counts in sorted(results.items()):
        if len(counts) < min_runs:
            raise InvalidArgumentError(f"size {size}: {len(counts)} runs, need at least {min_runs}")
        mean = float(np.mean(counts))
        if size <= 0 or mean <= 0:
            raise InvalidArgumentError("sizes and mean counts must be positive for a log-log fit")
        sizes.append(int(size))
        means.append(mean)
    slope, intercept = np.polyfit(np.log(sizes), np.log(means), 1)
    return ScalingFit(float(slope), float(intercept), tuple(sizes), tuple(means))
