import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qevo.core import (
    QubitChromosome,
    QubitGene,
    Rng,
    RunTrace,
    TerminationCondition,
    observe,
    observe_population,
    rotate,
)
from qevo.errors import InvalidArgumentError

angles = st.floats(-2 * math.pi, 2 * math.pi, allow_nan=False)


def gene_at(theta):
    return QubitGene(math.cos(theta), math.sin(theta))


def test_rng_reproducible():
    a, b = Rng(42), Rng(42)
    assert np.array_equal(a.uniform(100), b.uniform(100))
    assert np.array_equal(a.normal(50), b.normal(50))
    assert not np.array_equal(Rng(1).uniform(10), Rng(2).uniform(10))


def test_rng_seed_masked_to_64_bits():
    assert Rng(2**64 + 5).seed == 5
    assert Rng(-1).seed == 2**64 - 1


def test_rng_uniform_range_and_gaussian_moments():
    rng = Rng(7)
    u = rng.uniform(100_000)
    assert u.min() >= 0.0 and u.max() < 1.0
    g = rng.normal(100_000)
    # 3 sigma bands for the mean and the sample variance
    assert abs(g.mean()) < 3 / math.sqrt(1e5)
    assert abs(g.var() - 1.0) < 3 * math.sqrt(2 / 1e5)


def test_roulette():
    rng = Rng(3)
    picks = [rng.roulette([0.0, 1.0, 0.0]) for _ in range(100)]
    assert set(picks) == {1}
    zero = [rng.roulette([0.0, 0.0]) for _ in range(1000)]
    assert 400 < sum(zero) < 600
    with pytest.raises(InvalidArgumentError):
        rng.roulette([1.0, -1.0])
    with pytest.raises(InvalidArgumentError):
        rng.roulette([])


def test_gene_normalization_enforced():
    with pytest.raises(InvalidArgumentError):
        QubitGene(1.0, 0.1)
    assert QubitGene(0.6, 0.8).p_one == pytest.approx(0.64)


def test_observe_extremes():
    rng = Rng(0)
    assert observe(QubitChromosome([1.0] * 8, [0.0] * 8), rng).tolist() == [0] * 8
    assert observe(QubitChromosome([0.0] * 8, [1.0] * 8), rng).tolist() == [1] * 8


def test_observe_uniform_frequency():
    rng = Rng(11)
    chrom = QubitChromosome.uniform(1)
    freq = np.mean([observe(chrom, rng)[0] for _ in range(10_000)])
    assert abs(freq - 0.5) <= 0.015


def test_observe_consumes_one_draw_per_locus():
    chrom = QubitChromosome.from_angles([0.3, 1.0, 0.7])
    a, b = Rng(5), Rng(5)
    bits = observe(chrom, a)
    r = b.uniform(3)
    assert bits.tolist() == (r < np.sin([0.3, 1.0, 0.7]) ** 2).astype(int).tolist()
    assert a.uniform() == b.uniform()


def test_observe_population_matches_sequential():
    chroms = [QubitChromosome.from_angles(Rng(i).uniform(6) * 1.5) for i in range(4)]
    a, b = Rng(9), Rng(9)
    together = observe_population(chroms, a)
    one_by_one = np.stack([observe(c, b) for c in chroms])
    assert np.array_equal(together, one_by_one)


def test_observe_deterministic():
    chrom = QubitChromosome.uniform(20)
    assert np.array_equal(observe(chrom, Rng(4)), observe(chrom, Rng(4)))


def test_rotate_examples():
    g = rotate(QubitGene(1.0, 0.0), 0.0)
    assert (g.alpha, g.beta) == (1.0, 0.0)
    g = rotate(QubitGene(1.0, 0.0), math.pi / 2)
    assert g.alpha == pytest.approx(0.0, abs=1e-15)
    assert g.beta == pytest.approx(1.0, abs=1e-15)


@given(angles, angles)
def test_rotate_inverse(phi, theta):
    g = gene_at(phi)
    back = rotate(rotate(g, theta), -theta)
    assert abs(back.alpha - g.alpha) <= 1e-12
    assert abs(back.beta - g.beta) <= 1e-12


@given(angles, angles, angles)
def test_rotate_composition(phi, a, b):
    g = gene_at(phi)
    two = rotate(rotate(g, a), b)
    one = rotate(g, a + b)
    assert abs(two.alpha - one.alpha) <= 1e-12
    assert abs(two.beta - one.beta) <= 1e-12


@settings(max_examples=25)
@given(st.lists(angles, min_size=1, max_size=200))
def test_rotation_chain_stays_normalized(thetas):
    g = QubitGene(1.0, 0.0)
    for t in thetas:
        g = rotate(g, t)
        assert abs(g.alpha**2 + g.beta**2 - 1.0) <= 1e-12


def test_chromosome_roundtrip_and_immutability():
    c = QubitChromosome.from_genes([gene_at(0.1), gene_at(1.2)])
    assert len(c) == 2
    assert np.allclose(c.angles, [0.1, 1.2])
    assert c == QubitChromosome.from_angles([0.1, 1.2])
    with pytest.raises(ValueError):
        c.alpha[0] = 0.0
    u = QubitChromosome.uniform(3)
    assert np.allclose(u.alpha, 1 / math.sqrt(2), atol=1e-12)


def test_termination():
    with pytest.raises(InvalidArgumentError):
        TerminationCondition(0)
    trace = RunTrace()
    for v in (1, 2, 2, 2):
        trace.log(v, 0, 0)
    assert TerminationCondition(3).reached(trace)
    assert not TerminationCondition(10).reached(trace)
    assert TerminationCondition(10, target_fitness=2).reached(trace)
    assert TerminationCondition(10, stall_generations=2).reached(trace)
    assert not TerminationCondition(10, stall_generations=3).reached(trace)


def test_trace_rejects_regression():
    up = RunTrace(maximize=True)
    up.log(3, 1, 1)
    with pytest.raises(AssertionError):
        up.log(2, 1, 2)
    down = RunTrace(maximize=False)
    down.log(3, 4, 1)
    down.log(2, 4, 2)
    with pytest.raises(AssertionError):
        down.log(2.5, 1, 3)
    assert [r.index for r in down.rows] == [0, 1]
