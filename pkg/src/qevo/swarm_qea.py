"""Guide-chromosome QEA and the quantum swarm evolutionary algorithm (QSE).

QEA keeps a per-locus probability vector. Each generation it samples a
population from it, recombines the sample along its diagonals, and rebuilds
the vector from the best string found so far::

    guide_i  = alpha * p_i + (1 - alpha) * (1 - p_i)
    q_i      = clip(guide_i + b * N(0, 1), 0, 1)

QSE moves particles through qubit-angle space with the plain PSO update (no
inertia weight, no constriction). A particle at angle vector ``theta``
observes bit i as 1 with probability ``sin(theta_i)**2``. For TSP there is no
observation: ``sin(theta)**2`` is used directly as a random-key vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .core import Rng, RunRecord, RunTrace, TerminationCondition
from .errors import InvalidArgumentError
from .problems import BinaryProblem, TspProblem, decode_random_keys

HALF_PI = math.pi / 2


# --------------------------------------------------------------------------- QEA


@dataclass(frozen=True)
class QeaParams:
    alpha: float = 0.9
    b: float = 0.05
    population: int = 10
    generations: int = 500
    repair: bool = True

    def __post_init__(self):
        if not 0.5 < self.alpha <= 1.0:
            raise InvalidArgumentError("alpha must lie in (0.5, 1]")
        if self.b < 0:
            raise InvalidArgumentError("noise scale b must be >= 0")
        if self.population < 1:
            raise InvalidArgumentError("population must be >= 1")
        if self.generations < 0:
            raise InvalidArgumentError("generations must be >= 0")


def qea_guide(p_currentbest, alpha: float) -> np.ndarray:
    """Blend the best string toward its complement: ``alpha*p + (1-alpha)*(1-p)``."""
    if not 0.0 <= alpha <= 1.0:
        raise InvalidArgumentError("alpha must lie in [0, 1]")
    p = np.asarray(p_currentbest, dtype=float)
    return alpha * p + (1.0 - alpha) * (1.0 - p)


def qea_update(guide, b: float, rng: Rng) -> np.ndarray:
    """Gaussian perturbation of the guide, clamped to valid probabilities."""
    if b < 0:
        raise InvalidArgumentError("noise scale b must be >= 0")
    g = np.asarray(guide, dtype=float)
    noise = rng.normal(g.shape)
    return np.clip(g + b * noise, 0.0, 1.0)


def qea_diagonal_crossover(population) -> np.ndarray:
    """Offspring i takes gene j from row ``(i + j) mod popsize``."""
    pop = np.asarray(population)
    if pop.ndim != 2:
        raise InvalidArgumentError("population must be a rectangular matrix")
    n, length = pop.shape
    rows = (np.arange(n)[:, None] + np.arange(length)[None, :]) % n
    return pop[rows, np.arange(length)[None, :]]


def _evaluate(problem: BinaryProblem, pop: np.ndarray, repair: bool):
    if repair:
        pop = np.stack([problem.repair(p) for p in pop])
    return pop, np.array([problem.fitness(p) for p in pop], dtype=float)


def run_qea(
    problem: BinaryProblem,
    params: QeaParams,
    rng: Rng,
    termination: TerminationCondition | None = None,
) -> RunRecord:
    length = problem.n_bits
    q = np.full(length, 0.5)
    trace = RunTrace(maximize=True)
    best, best_fit, evals = None, -math.inf, 0

    for gen in range(params.generations + 1):
        if termination is not None and trace.rows and termination.reached(trace):
            break
        sample = (rng.uniform((params.population, length)) < q).astype(np.int8)
        pop, fit = _evaluate(problem, sample, params.repair)
        if gen > 0:
            kids, kid_fit = _evaluate(problem, qea_diagonal_crossover(sample), params.repair)
            pop, fit = np.vstack([pop, kids]), np.concatenate([fit, kid_fit])
        evals += len(fit)
        i = int(np.argmax(fit))
        if fit[i] > best_fit:
            best, best_fit = pop[i].copy(), float(fit[i])
        trace.log(best_fit, fit.mean(), evals)
        q = qea_update(qea_guide(best, params.alpha), params.b, rng)

    return RunRecord("qea", rng.seed, trace, best.tolist(), best_fit, evals, maximize=True)


# --------------------------------------------------------------------------- QSE


@dataclass(frozen=True)
class QseParams:
    c1: float = 2.0
    c2: float = 2.0
    v_max: float = math.pi / 8
    swarm: int = 20
    generations: int = 500
    repair: bool = True

    def __post_init__(self):
        if self.c1 < 0 or self.c2 < 0:
            raise InvalidArgumentError("c1 and c2 must be >= 0")
        if self.v_max <= 0:
            raise InvalidArgumentError("v_max must be > 0")
        if self.swarm < 1:
            raise InvalidArgumentError("swarm size must be >= 1")
        if self.generations < 0:
            raise InvalidArgumentError("generations must be >= 0")


@dataclass(frozen=True)
class Particle:
    present: np.ndarray
    velocity: np.ndarray
    pbest: np.ndarray
    pbest_fitness: float = -math.inf


def qse_step(particle: Particle, gbest, params: QseParams, rng: Rng) -> Particle:
    """PSO velocity/position update on qubit angles.

    Draws ``r1`` (one per component) then ``r2``; velocity is clamped to
    ``+-v_max`` and the position to ``[0, pi/2]``.
    """
    x = particle.present
    gbest = np.asarray(gbest, dtype=float)
    if gbest.shape != x.shape or particle.pbest.shape != x.shape:
        raise InvalidArgumentError("particle, pbest and gbest dimensions disagree")
    r1 = rng.uniform(x.shape)
    r2 = rng.uniform(x.shape)
    v = particle.velocity + params.c1 * r1 * (particle.pbest - x) + params.c2 * r2 * (gbest - x)
    v = np.clip(v, -params.v_max, params.v_max)
    return replace(particle, present=np.clip(x + v, 0.0, HALF_PI), velocity=v)


def _collapsed_angles(bits) -> np.ndarray:
    return np.where(np.asarray(bits) == 1, HALF_PI, 0.0)


def run_qse(
    problem: BinaryProblem | TspProblem,
    params: QseParams,
    rng: Rng,
    termination: TerminationCondition | None = None,
) -> RunRecord:
    """Binary problems observe each particle; TSP decodes ``sin^2`` angles as random keys.

    For binary problems a particle's pbest is stored as the angle vector of
    the observed string that earned it (bit 1 -> pi/2, bit 0 -> 0), so the
    swarm is pulled toward good strings rather than toward whatever
    distribution happened to sample one. For TSP the decode is deterministic
    and pbest is the position itself.
    """
    is_tsp = isinstance(problem, TspProblem)
    dim = problem.n_cities if is_tsp else problem.n_bits
    sign = 1.0 if problem.maximize else -1.0

    if is_tsp:
        starts = [rng.uniform(dim) * HALF_PI for _ in range(params.swarm)]
    else:
        starts = [np.full(dim, math.pi / 4) for _ in range(params.swarm)]
    swarm = [Particle(x, np.zeros(dim), x.copy()) for x in starts]

    trace = RunTrace(maximize=problem.maximize)
    gbest_pos, gbest_score, gbest_ind = None, -math.inf, None
    evals = 0

    for gen in range(params.generations + 1):
        if termination is not None and trace.rows and termination.reached(trace):
            break
        if gen > 0:
            swarm = [qse_step(p, gbest_pos, params, rng) for p in swarm]
        values = []
        for k, p in enumerate(swarm):
            if is_tsp:
                individual = decode_random_keys(np.sin(p.present) ** 2)
                value = problem.length(individual)
                target = p.present
            else:
                bits = (rng.uniform(dim) < np.sin(p.present) ** 2).astype(np.int8)
                individual = problem.repair(bits) if params.repair else bits
                value = problem.fitness(individual)
                target = _collapsed_angles(individual)
            values.append(value)
            score = sign * value
            if score > p.pbest_fitness:
                swarm[k] = p = replace(p, pbest=target.copy(), pbest_fitness=score)
            if score > gbest_score:
                gbest_pos, gbest_score, gbest_ind = target.copy(), score, np.array(individual)
        evals += len(swarm)
        trace.log(sign * gbest_score, float(np.mean(values)), evals)

    return RunRecord(
        "qse", rng.seed, trace, gbest_ind.tolist(), sign * gbest_score, evals, maximize=problem.maximize
    )
