"""Multi-universe genetic algorithm for permutation problems with interference crossover.

Each universe holds its own population of tours. An offspring is built by
stacking one parent per universe into a matrix and walking its diagonals:
gene ``j`` comes from row ``(start_row + j) mod U`` at column ``j``. A city
already placed is skipped by moving right along the same row, wrapping at
the end, until an unused city turns up.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Rng, RunRecord, RunTrace, TerminationCondition
from .errors import InvalidArgumentError
from .problems import TspInstance, TspProblem


@dataclass(frozen=True)
class QigaParams:
    universes: int = 4
    population: int = 20
    mutation_rate: float = 0.2
    elitism: int = 2
    generations: int = 200

    def __post_init__(self):
        if self.universes < 2 or self.population < 2:
            raise InvalidArgumentError("QIGA needs at least 2 universes of at least 2 chromosomes")
        if not 0.0 <= self.mutation_rate <= 1.0:
            raise InvalidArgumentError("mutation_rate must lie in [0, 1]")
        if not 0 <= self.elitism <= self.population:
            raise InvalidArgumentError("elitism must lie in [0, population]")
        if self.generations < 0:
            raise InvalidArgumentError("generations must be >= 0")


class Multiverse:
    """U populations of permutation chromosomes."""

    def __init__(self, universes: Sequence[Sequence[np.ndarray]]):
        if len(universes) < 2:
            raise InvalidArgumentError("a multiverse needs at least 2 universes")
        self.universes = [[np.asarray(c, dtype=np.int64) for c in u] for u in universes]
        n = len(self.universes[0][0])
        ref = np.arange(n)
        for u in self.universes:
            for c in u:
                if not np.array_equal(np.sort(c), ref):
                    raise InvalidArgumentError("every chromosome must be a permutation of 0..n-1")

    @classmethod
    def random(cls, n_cities: int, universes: int, population: int, rng: Rng) -> "Multiverse":
        return cls([[rng.permutation(n_cities) for _ in range(population)] for _ in range(universes)])


def interference_crossover(parents: Sequence[Sequence[int]], start_row: int) -> np.ndarray:
    """Build one offspring by walking the diagonals of the parent matrix."""
    rows = [np.asarray(p, dtype=np.int64) for p in parents]
    if not rows:
        raise InvalidArgumentError("need at least one parent")
    n = rows[0].size
    if any(r.size != n for r in rows):
        raise InvalidArgumentError("parents have inconsistent lengths")
    u = len(rows)
    if not 0 <= start_row < u:
        raise InvalidArgumentError(f"start_row {start_row} outside [0, {u})")
    used = np.zeros(n, dtype=bool)
    child = np.empty(n, dtype=np.int64)
    for j in range(n):
        row = rows[(start_row + j) % u]
        pos = j
        for _ in range(n):
            city = row[pos]
            if not used[city]:
                break
            pos = (pos + 1) % n
        else:
            raise InvalidArgumentError("parents are not permutations of the same city set")
        child[j] = city
        used[city] = True
    return child


def select_parent(population: Sequence[np.ndarray], lengths: Sequence[float], rng: Rng) -> np.ndarray:
    """Roulette selection weighted by inverse tour length."""
    if len(population) == 0:
        raise InvalidArgumentError("cannot select from an empty population")
    lengths = np.asarray(lengths, dtype=float)
    with np.errstate(divide="ignore"):
        weights = np.where(lengths > 0, 1.0 / lengths, 0.0)
    if np.any(lengths <= 0):
        # zero-length tours dominate; share the wheel among them
        weights = (lengths <= 0).astype(float)
    return population[rng.roulette(weights)]


def swap_mutation(perm, rate: float, rng: Rng) -> np.ndarray:
    """With probability ``rate`` exchange two distinct positions."""
    out = np.array(perm, dtype=np.int64)
    if rng.uniform() >= rate or out.size < 2:
        return out
    i = int(rng.integers(0, out.size))
    j = int(rng.integers(0, out.size - 1))
    if j >= i:
        j += 1
    out[i], out[j] = out[j], out[i]
    return out


def run_qiga(
    problem: TspProblem | TspInstance,
    params: QigaParams,
    rng: Rng,
    termination: TerminationCondition | None = None,
) -> RunRecord:
    if isinstance(problem, TspInstance):
        problem = TspProblem(problem)
    n = problem.n_cities
    mv = Multiverse.random(n, params.universes, params.population, rng)
    pops = mv.universes
    lengths = [np.array([problem.length(c) for c in pop]) for pop in pops]
    evals = params.universes * params.population

    trace = RunTrace(maximize=False)
    best_len, best_tour = np.inf, None
    for pop, ls in zip(pops, lengths):
        i = int(np.argmin(ls))
        if ls[i] < best_len:
            best_len, best_tour = float(ls[i]), pop[i].copy()
    trace.log(best_len, np.mean(np.concatenate(lengths)), evals)

    for _ in range(params.generations):
        if termination is not None and termination.reached(trace):
            break
        new_pops, new_lengths = [], []
        for u in range(params.universes):
            children, child_lens = [], []
            for k in range(params.population):
                parents = [select_parent(pops[v], lengths[v], rng) for v in range(params.universes)]
                start_row = (u * params.population + k) % params.universes
                child = interference_crossover(parents, start_row)
                child = swap_mutation(child, params.mutation_rate, rng)
                children.append(child)
                child_lens.append(problem.length(child))
            evals += params.population

            elite_idx = np.argsort(lengths[u], kind="stable")[: params.elitism]
            pool = [pops[u][i] for i in elite_idx] + children
            pool_lens = np.concatenate([lengths[u][elite_idx], child_lens])
            keep = np.argsort(pool_lens, kind="stable")[: params.population]
            new_pops.append([pool[i] for i in keep])
            new_lengths.append(pool_lens[keep])

            i = int(np.argmin(child_lens))
            if child_lens[i] < best_len:
                best_len, best_tour = float(child_lens[i]), children[i].copy()
        pops, lengths = new_pops, new_lengths
        trace.log(best_len, np.mean(np.concatenate(lengths)), evals)

    return RunRecord(
        algo="qiga",
        seed=rng.seed,
        trace=trace,
        best_individual=best_tour.tolist(),
        best_fitness=best_len,
        evals=evals,
        maximize=False,
    )
