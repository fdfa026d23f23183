"""Shared primitives: seeded randomness, qubit genotypes, observation, rotation and run tracing.

Observation convention: a qubit gene ``(alpha, beta)`` yields bit 1 with
probability ``beta**2`` and bit 0 with probability ``alpha**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .errors import InvalidArgumentError

_SEED_MASK = (1 << 64) - 1


class Rng:
    """Seeded random stream, single-owner.

    Backed by numpy's PCG64 bit generator. Uniform reals come from
    ``Generator.random`` (53-bit mantissa, range [0, 1)); Gaussian draws use
    numpy's ziggurat transform (``Generator.standard_normal``). Both are fixed
    for a given numpy release, so a seed reproduces a run bit for bit.
    """

    def __init__(self, seed: int):
        self.seed = int(seed) & _SEED_MASK
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def uniform(self, size=None):
        return self._gen.random(size)

    def normal(self, size=None):
        return self._gen.standard_normal(size)

    def integers(self, low: int, high: int, size=None):
        """Integers in ``[low, high)``."""
        return self._gen.integers(low, high, size=size)

    def permutation(self, n: int) -> np.ndarray:
        return self._gen.permutation(n)

    def roulette(self, weights) -> int:
        """Index drawn with probability proportional to ``weights`` (one uniform draw).

        Falls back to a uniform choice when every weight is zero.
        """
        w = np.asarray(weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise InvalidArgumentError("roulette needs a nonempty 1-D weight vector")
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise InvalidArgumentError("roulette weights must be finite and nonnegative")
        total = w.sum()
        r = self.uniform()
        if total <= 0.0:
            return min(int(r * w.size), w.size - 1)
        cum = np.cumsum(w)
        idx = int(np.searchsorted(cum, r * cum[-1], side="right"))
        return min(idx, w.size - 1)


@dataclass(frozen=True)
class QubitGene:
    alpha: float
    beta: float

    def __post_init__(self):
        if abs(self.alpha * self.alpha + self.beta * self.beta - 1.0) > 1e-12:
            raise InvalidArgumentError(
                f"qubit gene not normalized: alpha^2 + beta^2 = {self.alpha**2 + self.beta**2!r}"
            )

    @property
    def p_one(self) -> float:
        return self.beta * self.beta


def rotate(gene: QubitGene, theta: float) -> QubitGene:
    """Apply the 2x2 rotation by ``theta`` radians to ``(alpha, beta)``."""
    c, s = math.cos(theta), math.sin(theta)
    a = gene.alpha * c - gene.beta * s
    b = gene.alpha * s + gene.beta * c
    # renormalize so long rotation chains do not drift
    norm = math.hypot(a, b)
    return QubitGene(a / norm, b / norm)


class QubitChromosome:
    """Fixed-length sequence of qubit genes, stored as two amplitude arrays."""

    __slots__ = ("alpha", "beta")

    def __init__(self, alpha, beta):
        alpha = np.array(alpha, dtype=float)
        beta = np.array(beta, dtype=float)
        if alpha.ndim != 1 or alpha.shape != beta.shape or alpha.size == 0:
            raise InvalidArgumentError("alpha and beta must be equal-length nonempty vectors")
        if np.max(np.abs(alpha * alpha + beta * beta - 1.0)) > 1e-12:
            raise InvalidArgumentError("chromosome contains a non-normalized gene")
        alpha.flags.writeable = False
        beta.flags.writeable = False
        self.alpha = alpha
        self.beta = beta

    @classmethod
    def uniform(cls, length: int) -> "QubitChromosome":
        """All genes in equal superposition ``(1/sqrt2, 1/sqrt2)``."""
        return cls.from_angles(np.full(length, math.pi / 4))

    @classmethod
    def from_angles(cls, theta) -> "QubitChromosome":
        theta = np.asarray(theta, dtype=float)
        return cls(np.cos(theta), np.sin(theta))

    @classmethod
    def from_genes(cls, genes: Sequence[QubitGene]) -> "QubitChromosome":
        return cls([g.alpha for g in genes], [g.beta for g in genes])

    @property
    def genes(self) -> list[QubitGene]:
        return [QubitGene(float(a), float(b)) for a, b in zip(self.alpha, self.beta)]

    @property
    def angles(self) -> np.ndarray:
        return np.arctan2(self.beta, self.alpha)

    @property
    def p_one(self) -> np.ndarray:
        return self.beta * self.beta

    def __len__(self) -> int:
        return self.alpha.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, QubitChromosome):
            return NotImplemented
        return np.array_equal(self.alpha, other.alpha) and np.array_equal(self.beta, other.beta)

    def __repr__(self) -> str:
        return f"QubitChromosome(L={len(self)})"


def observe(chromosome: QubitChromosome, rng: Rng) -> np.ndarray:
    """Collapse every gene to a classical bit, consuming one uniform draw per locus in order."""
    r = rng.uniform(len(chromosome))
    return (r < chromosome.p_one).astype(np.int8)


def observe_population(chromosomes: Sequence[QubitChromosome], rng: Rng) -> np.ndarray:
    """Observe chromosomes in order; identical draws to calling :func:`observe` on each."""
    if not chromosomes:
        return np.zeros((0, 0), dtype=np.int8)
    p_one = np.stack([c.p_one for c in chromosomes])
    r = rng.uniform(p_one.shape)
    return (r < p_one).astype(np.int8)


@dataclass(frozen=True)
class TerminationCondition:
    max_generations: int
    target_fitness: float | None = None
    stall_generations: int | None = None

    def __post_init__(self):
        if self.max_generations < 1:
            raise InvalidArgumentError("max_generations must be >= 1")
        if self.stall_generations is not None and self.stall_generations < 1:
            raise InvalidArgumentError("stall_generations must be >= 1")

    def reached(self, trace: "RunTrace") -> bool:
        gen = len(trace) - 1
        if gen >= self.max_generations:
            return True
        best = trace.best_series()
        if self.target_fitness is not None and best:
            hit = best[-1] >= self.target_fitness if trace.maximize else best[-1] <= self.target_fitness
            if hit:
                return True
        if self.stall_generations is not None and len(best) > self.stall_generations:
            return best[-1] == best[-1 - self.stall_generations]
        return False


@dataclass(frozen=True)
class GenerationStats:
    index: int
    best_fitness: float
    mean_fitness: float
    evals: int


@dataclass
class RunTrace:
    """Per-generation best-so-far, population mean and cumulative evaluation count."""

    maximize: bool = True
    rows: list[GenerationStats] = field(default_factory=list)

    def log(self, best_fitness: float, mean_fitness: float, evals: int) -> None:
        best_fitness = float(best_fitness)
        if self.rows:
            prev = self.rows[-1].best_fitness
            worse = best_fitness < prev if self.maximize else best_fitness > prev
            if worse:
                raise AssertionError(
                    f"best-so-far regressed at generation {len(self.rows)}: {prev} -> {best_fitness}"
                )
        self.rows.append(GenerationStats(len(self.rows), best_fitness, float(mean_fitness), int(evals)))

    def best_series(self) -> list[float]:
        return [r.best_fitness for r in self.rows]

    def __len__(self) -> int:
        return len(self.rows)


@dataclass
class RunRecord:
    algo: str
    seed: int
    trace: RunTrace
    best_individual: Any
    best_fitness: float
    evals: int
    maximize: bool = True
    extra: dict = field(default_factory=dict)


def better(a: float, b: float, maximize: bool) -> bool:
    """Strict improvement of ``a`` over ``b`` in the problem's direction."""
    return a > b if maximize else a < b
