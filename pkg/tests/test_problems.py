import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import knapsack_enumerate, tour_length_resum

from qevo.core import Rng
from qevo.errors import CapacityError, DomainError, InvalidArgumentError, RangeError, SizeError
from qevo.problems import (
    F6Domain,
    KnapsackInstance,
    KnapsackProblem,
    OneMax,
    TspInstance,
    bits_to_int,
    decode_bits_to_real,
    decode_random_keys,
    f6,
    instance_from_json,
    int_to_bits,
    knapsack_fitness,
    knapsack_oracle_dp,
    knapsack_repair,
    load_instance,
    random_knapsack,
    random_tsp,
    scale_to_register,
    tsp_length,
    tsp_oracle_bruteforce,
)

SMALL = KnapsackInstance([2, 3, 4], [3, 4, 5], 5)


def test_knapsack_fitness_examples():
    assert knapsack_fitness(SMALL, [0, 0, 0]) == 0
    assert knapsack_fitness(SMALL, [1, 1, 0]) == 7
    assert knapsack_fitness(SMALL, [1, 1, 1]) == 0
    with pytest.raises(InvalidArgumentError):
        knapsack_fitness(SMALL, [1, 0])


def test_knapsack_repair_examples():
    assert knapsack_repair(SMALL, [1, 1, 1]).tolist() == [1, 1, 0]
    assert knapsack_repair(SMALL, [1, 0, 0]).tolist() == [1, 0, 0]
    assert knapsack_repair(SMALL, [0, 0, 0]).tolist() == [0, 0, 0]


def test_knapsack_repair_ties_drop_lower_index_first():
    inst = KnapsackInstance([2, 2, 2], [2, 2, 2], 4)
    assert knapsack_repair(inst, [1, 1, 1]).tolist() == [0, 1, 1]


def test_knapsack_dp_examples():
    assert knapsack_oracle_dp(SMALL) == 7
    assert knapsack_oracle_dp(KnapsackInstance([2, 3], [3, 4], 0)) == 0
    assert knapsack_oracle_dp(KnapsackInstance([4], [9], 5)) == 9
    with pytest.raises(CapacityError):
        knapsack_oracle_dp(KnapsackInstance([1] * 10, [1] * 10, 10**6 + 1))


knapsacks = st.integers(1, 15).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(1, 20), min_size=n, max_size=n),
        st.lists(st.integers(1, 20), min_size=n, max_size=n),
        st.integers(0, 100),
    )
)


@settings(max_examples=40, deadline=None)
@given(knapsacks)
def test_dp_matches_enumeration(data):
    w, p, cap = data
    assert knapsack_oracle_dp(KnapsackInstance(w, p, cap)) == knapsack_enumerate(w, p, cap)


@settings(max_examples=100)
@given(knapsacks, st.data())
def test_repair_yields_feasible(data, draw):
    w, p, cap = data
    inst = KnapsackInstance(w, p, cap)
    sel = draw.draw(st.lists(st.integers(0, 1), min_size=len(w), max_size=len(w)))
    fixed = knapsack_repair(inst, sel)
    assert int(np.dot(fixed, w)) <= cap
    assert knapsack_fitness(inst, fixed) > 0 or not fixed.any()
    assert np.all(fixed <= np.array(sel))


def test_knapsack_validation():
    with pytest.raises(InvalidArgumentError):
        KnapsackInstance([1, 2], [1], 3)
    with pytest.raises(InvalidArgumentError):
        KnapsackInstance([0], [1], 3)
    with pytest.raises(InvalidArgumentError):
        KnapsackInstance([1], [1], -1)


def test_random_knapsack_deterministic():
    a, b = random_knapsack(10, Rng(3)), random_knapsack(10, Rng(3))
    assert a == b
    assert a.capacity == sum(a.weights) // 2
    assert all(1 <= x <= 10 for x in a.weights + a.profits)


def test_tsp_examples():
    ones = TspInstance(np.ones((3, 3)) - np.eye(3))
    assert tsp_length(ones, [0, 1, 2]) == 3
    inst = random_tsp(6, Rng(1))
    tour = [3, 1, 0, 5, 2, 4]
    assert tsp_length(inst, tour) == pytest.approx(tsp_length(inst, tour[::-1]), abs=1e-12)
    assert tsp_length(inst, tour) == pytest.approx(tour_length_resum(inst.distances, tour), abs=1e-12)
    with pytest.raises(InvalidArgumentError):
        tsp_length(inst, [0, 0, 1, 2, 3, 4])


@settings(max_examples=50)
@given(st.integers(3, 9), st.integers(0, 2**32), st.integers(0, 8))
def test_tsp_length_rotation_and_reversal(n, seed, shift):
    inst = random_tsp(n, Rng(seed))
    tour = Rng(seed + 1).permutation(n).tolist()
    base = tsp_length(inst, tour)
    k = shift % n
    assert tsp_length(inst, tour[k:] + tour[:k]) == pytest.approx(base, abs=1e-12)
    assert tsp_length(inst, tour[::-1]) == pytest.approx(base, abs=1e-12)


def test_tsp_bruteforce_examples():
    tri = TspInstance([[0, 1, 2], [1, 0, 2], [2, 2, 0]])
    tour, length = tsp_oracle_bruteforce(tri)
    assert sorted(tour) == [0, 1, 2] and length == 5
    square = TspInstance.from_coords([[0, 0], [1, 0], [1, 1], [0, 1]])
    tour, length = tsp_oracle_bruteforce(square)
    assert length == pytest.approx(4.0)
    flat = TspInstance(2.5 * (np.ones((5, 5)) - np.eye(5)))
    assert tsp_oracle_bruteforce(flat)[1] == pytest.approx(12.5)
    with pytest.raises(SizeError):
        tsp_oracle_bruteforce(random_tsp(11, Rng(0)))


def test_tsp_validation():
    with pytest.raises(InvalidArgumentError):
        TspInstance([[0, 1], [1, 0]])
    with pytest.raises(InvalidArgumentError):
        TspInstance([[0, 1, 2], [2, 0, 1], [1, 1, 0]])
    with pytest.raises(InvalidArgumentError):
        TspInstance([[1, 1, 1], [1, 0, 1], [1, 1, 0]])


def test_f6_examples():
    assert f6(0.0, 0.0) == 1.0
    rng = np.random.default_rng(0)
    x, y = rng.uniform(-100, 100, (2, 10_000))
    assert np.array_equal(f6(x, y), f6(-x, -y))
    assert np.max(f6(x, y)) <= 1.0 + 1e-12


def test_f6_printed_form():
    x, y = 3.0, 4.0
    r2 = 25.0
    expected = 0.5 - (math.sin(5.0) ** 2 - 0.5) / (1.0 + 0.001 * r2**2)
    assert f6(x, y) == pytest.approx(expected, abs=1e-15)


def test_f6_domain():
    assert F6Domain().lower == (-100.0, -100.0)
    with pytest.raises(DomainError):
        F6Domain((0, 0), (0, 1))


def test_decoders():
    assert decode_bits_to_real([0, 0, 0], -1.0, 5.0) == -1.0
    assert decode_bits_to_real([1, 1, 1], -1.0, 5.0) == 5.0
    assert decode_bits_to_real([1, 0], 0.0, 3.0) == 2.0
    assert decode_random_keys([1, 2, 3]).tolist() == [0, 1, 2]
    assert decode_random_keys([3, 2, 1]).tolist() == [2, 1, 0]
    assert decode_random_keys([0.3, 0.1, 0.2]).tolist() == [1, 2, 0]
    assert decode_random_keys([0.5, 0.5, 0.1]).tolist() == [2, 0, 1]
    assert bits_to_int([1, 0, 1]) == 5
    assert int_to_bits(5, 4).tolist() == [0, 1, 0, 1]


@given(st.lists(st.sampled_from([0.0, 0.25, 0.5, 1.0, -3.0, 7.5]), min_size=1, max_size=30))
def test_random_keys_always_permutation(values):
    perm = decode_random_keys(values)
    assert sorted(perm.tolist()) == list(range(len(values)))


def test_scale_to_register():
    assert scale_to_register([0, 3, 7], 3).tolist() == [0, 3, 7]
    assert scale_to_register([0.0, 0.5, 1.0], 4, f_max_bound=1.0).tolist() == [0, 8, 15]
    with pytest.raises(RangeError):
        scale_to_register([8], 3)


def test_problem_tables_big_endian():
    prob = KnapsackProblem(SMALL)
    table = prob.fitness_table()
    for u in range(8):
        assert table[u] == knapsack_fitness(SMALL, int_to_bits(u, 3))
    assert table[0b110] == 7
    assert OneMax(3).fitness_table().tolist() == [0, 1, 1, 2, 1, 2, 2, 3]


def test_instance_files(tmp_path):
    path = tmp_path / "k.json"
    path.write_text(json.dumps(SMALL.to_dict()))
    assert load_instance(path) == SMALL
    tsp = random_tsp(4, Rng(2))
    assert np.array_equal(instance_from_json(tsp.to_dict()).distances, tsp.distances)
    assert instance_from_json({"lower": [-1, -2], "upper": [1, 2]}) == F6Domain((-1, -2), (1, 2))
    assert instance_from_json([3, 1, 4]) == [3, 1, 4]
    with pytest.raises(InvalidArgumentError):
        instance_from_json({"foo": 1})
    with pytest.raises(InvalidArgumentError):
        instance_from_json([1.5, 2])
