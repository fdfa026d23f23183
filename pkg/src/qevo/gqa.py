"""Genetic quantum algorithm: qubit chromosomes, observation, and rotation toward the best string.

The loop follows the classic procedure: initialize Q, observe it into a
classical population P, evaluate, keep the best string b, then repeatedly
observe, evaluate, rotate Q toward b and refresh b. There is no crossover or
mutation.

Some write-ups caption this procedure "QGA". The id here is ``gqa``, which
keeps it apart from the register-based search in :mod:`qevo.grover_rqga`.

Rotation policy: loci where the observed string differs from b are turned by
a fixed ``delta_theta`` toward b's bit. Gene angles stay inside
``[0.001 * pi/2, 0.999 * pi/2]`` so no locus ever becomes deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    QubitChromosome,
    Rng,
    RunRecord,
    RunTrace,
    TerminationCondition,
    observe_population,
)
from .errors import InvalidArgumentError
from .problems import BinaryProblem

ANGLE_MIN = 0.001 * math.pi / 2
ANGLE_MAX = 0.999 * math.pi / 2


@dataclass(frozen=True)
class GqaParams:
    chromosomes: int = 10
    length: int | None = None  # taken from the problem when None
    delta_theta: float = 0.01 * math.pi
    generations: int = 500
    repair: bool = True

    def __post_init__(self):
        if self.chromosomes < 1:
            raise InvalidArgumentError("need at least one chromosome")
        if self.length is not None and self.length < 1:
            raise InvalidArgumentError("chromosome length must be >= 1")
        if not 0.0 <= self.delta_theta < math.pi / 4:
            raise InvalidArgumentError("delta_theta must lie in [0, pi/4)")
        if self.generations < 0:
            raise InvalidArgumentError("generations must be >= 0")


@dataclass
class GqaState:
    chromosomes: list[QubitChromosome]
    best: np.ndarray | None = None
    best_fitness: float = -math.inf
    generation: int = 0
    evals: int = 0


def init_gqa(params: GqaParams) -> GqaState:
    if params.length is None:
        raise InvalidArgumentError("init_gqa needs an explicit chromosome length")
    return GqaState([QubitChromosome.uniform(params.length) for _ in range(params.chromosomes)])


def update_rotation(
    chromosome: QubitChromosome,
    observed,
    best,
    observed_fitness: float,
    best_fitness: float,
    delta_theta: float,
) -> QubitChromosome:
    """Rotate each differing locus by ``+delta_theta`` toward a 1 in ``best``, ``-delta_theta`` toward a 0."""
    observed = np.asarray(observed)
    best = np.asarray(best)
    if observed.shape != (len(chromosome),) or best.shape != observed.shape:
        raise InvalidArgumentError("observed/best strings must match the chromosome length")
    if best_fitness < observed_fitness:
        return chromosome
    differ = observed != best
    if not differ.any():
        return chromosome
    step = np.where(best == 1, delta_theta, -delta_theta) * differ
    theta = np.clip(chromosome.angles + step, ANGLE_MIN, ANGLE_MAX)
    theta = np.where(differ, theta, chromosome.angles)
    return QubitChromosome.from_angles(theta)


def _evaluate(problem: BinaryProblem, population: np.ndarray, repair: bool):
    if repair:
        population = np.stack([problem.repair(p) for p in population])
    fit = np.array([problem.fitness(p) for p in population], dtype=float)
    return population, fit


def gqa_step(state: GqaState, problem: BinaryProblem, params: GqaParams, rng: Rng) -> tuple[np.ndarray, np.ndarray]:
    """One pass of the loop. Generation 0 only observes and stores b."""
    observed, fit = _evaluate(problem, observe_population(state.chromosomes, rng), params.repair)
    state.evals += len(fit)
    if state.generation > 0:
        state.chromosomes = [
            update_rotation(c, o, state.best, f, state.best_fitness, params.delta_theta)
            for c, o, f in zip(state.chromosomes, observed, fit)
        ]
    i = int(np.argmax(fit))
    if state.best is None or fit[i] > state.best_fitness:
        state.best, state.best_fitness = observed[i].copy(), float(fit[i])
    state.generation += 1
    return observed, fit


def run_gqa(
    problem: BinaryProblem,
    params: GqaParams,
    rng: Rng,
    termination: TerminationCondition | None = None,
) -> RunRecord:
    if params.length is not None and params.length != problem.n_bits:
        raise InvalidArgumentError(f"params.length={params.length} but problem has {problem.n_bits} bits")
    state = GqaState([QubitChromosome.uniform(problem.n_bits) for _ in range(params.chromosomes)])
    trace = RunTrace(maximize=True)
    for _ in range(params.generations + 1):
        if termination is not None and trace.rows and termination.reached(trace):
            break
        _, fit = gqa_step(state, problem, params, rng)
        trace.log(state.best_fitness, fit.mean(), state.evals)
    return RunRecord(
        algo="gqa",
        seed=rng.seed,
        trace=trace,
        best_individual=state.best.tolist(),
        best_fitness=state.best_fitness,
        evals=state.evals,
        maximize=True,
        extra={"final_chromosomes": state.chromosomes},
    )
