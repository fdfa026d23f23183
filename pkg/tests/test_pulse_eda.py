import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qevo.core import Rng
from qevo.errors import DomainError, InvalidArgumentError
from qevo.problems import F6Domain, F6Problem
from qevo.pulse_eda import (
    Pulse,
    QieaParams,
    VariableDistribution,
    contraction,
    init_distribution,
    run_qiea,
    sample,
    update_distribution,
)


def test_init_examples():
    d = init_distribution(0, 10, 1)
    (p,) = d.pulses
    assert (p.center, p.width, p.height) == (5.0, 10.0, 0.1)
    d2 = init_distribution(0, 1, 2)
    assert [p.height for p in d2.pulses] == [0.5, 0.5]
    assert d2.centers.tolist() == [0.25, 0.75]
    assert abs(init_distribution(-100, 100, 7).total_area - 1) <= 1e-9


def test_distribution_validation():
    with pytest.raises(InvalidArgumentError):
        VariableDistribution([Pulse(0, 2, 1)], 0, 1)  # area 2, not 1
    with pytest.raises(DomainError):
        init_distribution(1, 1, 3)


def test_sample_examples():
    w = 0.2
    narrow = VariableDistribution([Pulse(3.0, w, 1 / w)], -10, 10)
    xs = sample(narrow, Rng(1), 1000)
    assert np.all(np.abs(xs - 3.0) <= w / 2)
    full = init_distribution(-4, 6, 1)
    xs = sample(full, Rng(2), 10_000)
    sigma = 10 / math.sqrt(12) / math.sqrt(10_000)
    assert abs(xs.mean() - 1.0) <= 3 * sigma
    assert isinstance(sample(full, Rng(2)), float)


@given(st.integers(0, 2**32))
def test_samples_in_domain(seed):
    rng = Rng(seed)
    d = VariableDistribution([Pulse(-9.5, 4.0, 0.125), Pulse(9.0, 4.0, 0.125)], -10, 10)
    xs = sample(d, rng, 200)
    assert np.all((xs >= -10) & (xs <= 10))


def test_contraction_examples():
    assert contraction(-100, 100, 200, 200, 1.0) == 0.0
    assert contraction(-100, 100, 0, 200, 1.0) == 199.0
    assert contraction(0, 11, 5, 10, 1.0) == pytest.approx(math.sqrt(11) - 1, abs=1e-12)
    assert contraction(0, 11, 5, 10, 1.0) == pytest.approx(2.3166, abs=1e-4)
    with pytest.raises(DomainError):
        contraction(0, 1, 0, 10, 1.0)
    # the printed variant keeps one exponent for every generation
    assert contraction(0, 11, 3, 10, 2.0, "printed") == contraction(0, 11, 9, 10, 2.0, "printed")


@given(st.floats(1.5, 1e3), st.integers(1, 60), st.floats(0.1, 4.0))
def test_contraction_strictly_decreasing(span, T, lam):
    sig = [contraction(0, span, t, T, lam) for t in range(T + 1)]
    assert all(a > b for a, b in zip(sig, sig[1:]))
    assert sig[-1] == 0.0


def test_update_examples():
    params = QieaParams(pulses=5, population=20, generations=10)
    d = init_distribution(-100, 100, 5)
    rng = Rng(3)
    same = update_distribution(d, np.full(20, 7.5), np.arange(20.0), 1, params, rng)
    assert np.all(same.centers == 7.5)
    assert abs(same.total_area - 1) <= 1e-9
    values = rng.uniform(20) * 200 - 100
    last = update_distribution(d, values, np.ones(20), 10, params, rng)
    assert np.all(last.widths == pytest.approx(0.2))
    zero = update_distribution(d, values, np.zeros(20), 3, params, rng)
    assert abs(zero.total_area - 1) <= 1e-9
    with pytest.raises(InvalidArgumentError):
        update_distribution(d, values, -np.ones(20), 3, params, rng)


def test_params_validation():
    with pytest.raises(InvalidArgumentError):
        QieaParams(pulses=3, population=10)
    with pytest.raises(InvalidArgumentError):
        QieaParams(lam=0)
    with pytest.raises(InvalidArgumentError):
        QieaParams(contraction="other")


def test_generations_zero_is_initial_sample():
    prob = F6Problem()
    rec = run_qiea(prob, QieaParams(generations=0), Rng(4))
    d = init_distribution(-100, 100, 5)
    rng = Rng(4)
    xs, ys = sample(d, rng, 100), sample(d, rng, 100)
    assert rec.best_fitness == pytest.approx(prob.fitness(xs, ys).max())


def test_run_deterministic_monotone_areas():
    prob = F6Problem(F6Domain((-20, -20), (20, 20)))
    a = run_qiea(prob, QieaParams(generations=40), Rng(8))
    b = run_qiea(prob, QieaParams(generations=40), Rng(8))
    assert a.trace.rows == b.trace.rows
    assert np.all(np.diff(a.trace.best_series()) >= 0)
    assert np.all(np.abs(np.array(a.extra["pulse_areas"]) - 1) <= 1e-9)
    x, y = a.best_individual
    assert -20 <= x <= 20 and -20 <= y <= 20
    assert prob.fitness(x, y) == a.best_fitness
    c = run_qiea(prob, QieaParams(generations=10, elitist=False, contraction="printed"), Rng(8))
    assert len(c.trace) == 11
