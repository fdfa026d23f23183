"""Benchmark problems (0-1 knapsack, TSP, F6), genotype decoders and exact desk-scale oracles.

Bit strings map to integers big-endian: locus 0 is the most significant bit,
so individual ``u`` of an N-bit register selects item ``i`` when bit
``N - 1 - i`` of ``u`` is set.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import Rng
from .errors import CapacityError, DomainError, InvalidArgumentError, RangeError, SizeError

DP_TABLE_LIMIT = 10**7
TSP_BRUTEFORCE_LIMIT = 10


# --------------------------------------------------------------------------- knapsack


@dataclass(frozen=True)
class KnapsackInstance:
    weights: tuple[int, ...]
    profits: tuple[int, ...]
    capacity: int

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        object.__setattr__(self, "profits", tuple(int(p) for p in self.profits))
        if len(self.weights) != len(self.profits) or not self.weights:
            raise InvalidArgumentError("weights and profits must be nonempty and of equal length")
        if min(self.weights) <= 0 or min(self.profits) <= 0:
            raise InvalidArgumentError("weights and profits must be positive integers")
        if int(self.capacity) != self.capacity or self.capacity < 0:
            raise InvalidArgumentError("capacity must be a nonnegative integer")
        object.__setattr__(self, "capacity", int(self.capacity))

    @property
    def n(self) -> int:
        return len(self.weights)

    def to_dict(self) -> dict:
        return {"weights": list(self.weights), "profits": list(self.profits), "capacity": self.capacity}

    @classmethod
    def from_dict(cls, data: dict) -> "KnapsackInstance":
        try:
            return cls(data["weights"], data["profits"], data["capacity"])
        except KeyError as exc:
            raise InvalidArgumentError(f"knapsack instance missing key {exc.args[0]!r}") from None


def _selection(inst: KnapsackInstance, selection) -> np.ndarray:
    bits = np.asarray(selection, dtype=np.int64).ravel()
    if bits.size != inst.n:
        raise InvalidArgumentError(f"selection has {bits.size} bits, instance has {inst.n} items")
    return bits


def knapsack_fitness(inst: KnapsackInstance, selection) -> int:
    """Total profit of the selection, or 0 if it exceeds capacity."""
    bits = _selection(inst, selection)
    if int(np.dot(bits, inst.weights)) > inst.capacity:
        return 0
    return int(np.dot(bits, inst.profits))


def knapsack_repair(inst: KnapsackInstance, selection) -> np.ndarray:
    """Drop selected items, worst profit/weight ratio first, until the selection fits."""
    bits = _selection(inst, selection).astype(np.int8)
    weight = int(np.dot(bits, inst.weights))
    if weight <= inst.capacity:
        return bits
    # stable sort keeps lower index first among equal ratios
    ratios = np.asarray(inst.profits, dtype=float) / np.asarray(inst.weights, dtype=float)
    for i in np.argsort(ratios, kind="stable"):
        if bits[i]:
            bits[i] = 0
            weight -= inst.weights[i]
            if weight <= inst.capacity:
                break
    return bits


def knapsack_oracle_dp(inst: KnapsackInstance) -> int:
    """Exact optimum by the capacity-indexed dynamic program."""
    if inst.n * inst.capacity > DP_TABLE_LIMIT:
        raise CapacityError(
            f"DP table n*capacity = {inst.n * inst.capacity} exceeds {DP_TABLE_LIMIT}; use a smaller instance"
        )
    best = np.zeros(inst.capacity + 1, dtype=np.int64)
    for w, p in zip(inst.weights, inst.profits):
        if w <= inst.capacity:
            # right-hand side is evaluated before assignment, so each item is used once
            best[w:] = np.maximum(best[w:], best[: inst.capacity + 1 - w] + p)
    return int(best[-1])


def random_knapsack(n: int, rng: Rng, max_weight: int = 10, max_profit: int = 10) -> KnapsackInstance:
    """Uniform integer weights and profits in ``[1, max]``; capacity is half the total weight."""
    weights = rng.integers(1, max_weight + 1, size=n)
    profits = rng.integers(1, max_profit + 1, size=n)
    return KnapsackInstance(tuple(weights), tuple(profits), int(weights.sum()) // 2)


# --------------------------------------------------------------------------- TSP


class TspInstance:
    """Symmetric distance matrix with zero diagonal."""

    def __init__(self, distances):
        d = np.array(distances, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1]:
            raise InvalidArgumentError("distance matrix must be square")
        if d.shape[0] < 3:
            raise InvalidArgumentError("TSP needs at least 3 cities")
        if not np.all(np.isfinite(d)) or np.any(d < 0):
            raise InvalidArgumentError("distances must be finite and nonnegative")
        if not np.array_equal(d, d.T):
            raise InvalidArgumentError("distance matrix must be symmetric")
        if np.any(np.diag(d) != 0):
            raise InvalidArgumentError("distance matrix must have a zero diagonal")
        d.flags.writeable = False
        self.distances = d

    @property
    def n(self) -> int:
        return self.distances.shape[0]

    @classmethod
    def from_coords(cls, coords) -> "TspInstance":
        xy = np.asarray(coords, dtype=float)
        diff = xy[:, None, :] - xy[None, :, :]
        d = np.sqrt((diff**2).sum(-1))
        return cls((d + d.T) / 2)

    def to_dict(self) -> dict:
        return {"distances": self.distances.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "TspInstance":
        if "distances" not in data:
            raise InvalidArgumentError("TSP instance missing key 'distances'")
        return cls(data["distances"])


def random_tsp(n: int, rng: Rng) -> TspInstance:
    """Cities uniform in the unit square, Euclidean distances."""
    return TspInstance.from_coords(rng.uniform((n, 2)))


def _check_tour(n: int, tour) -> np.ndarray:
    t = np.asarray(tour)
    if t.shape != (n,) or not np.array_equal(np.sort(t), np.arange(n)):
        raise InvalidArgumentError(f"tour is not a permutation of 0..{n - 1}")
    return t.astype(np.int64)


def tsp_length(inst: TspInstance, tour) -> float:
    """Closed-cycle length, return edge included."""
    t = _check_tour(inst.n, tour)
    return float(inst.distances[t, np.roll(t, -1)].sum())


def tsp_oracle_bruteforce(inst: TspInstance) -> tuple[list[int], float]:
    """Enumerate the (n-1)!/2 distinct tours with city 0 fixed."""
    n = inst.n
    if n > TSP_BRUTEFORCE_LIMIT:
        raise SizeError(f"brute-force TSP oracle limited to {TSP_BRUTEFORCE_LIMIT} cities, got {n}")
    d = inst.distances
    best_tour, best_len = None, math.inf
    for rest in itertools.permutations(range(1, n)):
        if rest[0] > rest[-1]:  # mirror image already seen
            continue
        tour = (0,) + rest
        length = d[tour[-1], 0] + sum(d[a, b] for a, b in zip(tour, tour[1:]))
        if length < best_len:
            best_tour, best_len = list(tour), float(length)
    return best_tour, best_len


# --------------------------------------------------------------------------- F6


@dataclass(frozen=True)
class F6Domain:
    lower: tuple[float, float] = (-100.0, -100.0)
    upper: tuple[float, float] = (100.0, 100.0)

    def __post_init__(self):
        lo = tuple(float(v) for v in self.lower)
        hi = tuple(float(v) for v in self.upper)
        if len(lo) != 2 or len(hi) != 2:
            raise InvalidArgumentError("F6 domain needs two lower and two upper bounds")
        if not all(a < b for a, b in zip(lo, hi)):
            raise DomainError("F6 domain needs lower < upper on both axes")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    def to_dict(self) -> dict:
        return {"lower": list(self.lower), "upper": list(self.upper)}

    @classmethod
    def from_dict(cls, data: dict) -> "F6Domain":
        try:
            return cls(tuple(data["lower"]), tuple(data["upper"]))
        except KeyError as exc:
            raise InvalidArgumentError(f"F6 domain missing key {exc.args[0]!r}") from None


def f6(x, y):
    """F6 as printed, with ``0.001 * (x^2 + y^2)^2`` in the denominator.

    The classical Schaffer F6 squares ``1 + 0.001 (x^2 + y^2)`` instead; both
    peak at 1.0 at the origin. Works elementwise on arrays.
    """
    r2 = np.square(x) + np.square(y)
    out = 0.5 - (np.sin(np.sqrt(r2)) ** 2 - 0.5) / (1.0 + 0.001 * r2**2)
    return float(out) if np.ndim(out) == 0 else out


# --------------------------------------------------------------------------- decoders


def bits_to_int(bits) -> int:
    value = 0
    for b in np.asarray(bits).ravel():
        value = (value << 1) | int(b)
    return value


def int_to_bits(value: int, width: int) -> np.ndarray:
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.int8)


def decode_bits_to_real(bits, lower: float, upper: float) -> float:
    """Fixed-point map of a k-bit segment onto ``[lower, upper]``."""
    seg = np.asarray(bits).ravel()
    if seg.size == 0:
        raise InvalidArgumentError("cannot decode an empty bit segment")
    return lower + bits_to_int(seg) / (2**seg.size - 1) * (upper - lower)


def decode_random_keys(values) -> np.ndarray:
    """Argsort ascending; ties go to the lower index."""
    v = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(v)):
        raise InvalidArgumentError("random keys must be finite")
    return np.argsort(v, kind="stable")


def scale_to_register(values, n_bits: int, f_max_bound: float | None = None) -> np.ndarray:
    """Map nonnegative fitness values onto integers in ``[0, 2**n_bits)``.

    ``round(f * (2**M - 1) / f_max_bound)``. With ``f_max_bound=None`` the
    values must already be integers that fit and are returned unchanged.
    """
    v = np.asarray(values, dtype=float)
    top = 2**n_bits - 1
    if f_max_bound is None:
        if np.any(v != np.round(v)):
            raise RangeError("non-integer fitness needs an explicit f_max_bound for register scaling")
        out = v.astype(np.int64)
    else:
        if f_max_bound <= 0:
            raise InvalidArgumentError("f_max_bound must be positive")
        out = np.round(v * top / f_max_bound).astype(np.int64)
    if out.size and (out.min() < 0 or out.max() > top):
        raise RangeError(f"fitness values outside [0, {top}] for a {n_bits}-bit register")
    return out


# --------------------------------------------------------------------------- fitness wrappers


class BinaryProblem:
    """Bit-string fitness function, maximized."""

    name = "binary"
    maximize = True
    n_bits: int

    def fitness(self, bits) -> float:
        raise NotImplementedError

    def repair(self, bits) -> np.ndarray:
        return np.asarray(bits, dtype=np.int8)

    def fitness_table(self) -> np.ndarray:
        """Fitness of every individual ``u`` in ``[0, 2**n_bits)``, big-endian bit order."""
        if self.n_bits > 24:
            raise CapacityError(f"cannot tabulate {self.n_bits}-bit fitness")
        # bit i of the genotype is bit (n-1-i) of u
        u = np.arange(2**self.n_bits)
        shifts = np.arange(self.n_bits - 1, -1, -1)
        all_bits = ((u[:, None] >> shifts[None, :]) & 1).astype(np.int8)
        return np.array([self.fitness(b) for b in all_bits])


class KnapsackProblem(BinaryProblem):
    name = "knapsack"

    def __init__(self, instance: KnapsackInstance):
        self.instance = instance
        self.n_bits = instance.n

    def fitness(self, bits) -> float:
        return knapsack_fitness(self.instance, bits)

    def repair(self, bits) -> np.ndarray:
        return knapsack_repair(self.instance, bits)

    def fitness_table(self) -> np.ndarray:
        if self.n_bits > 24:
            raise CapacityError(f"cannot tabulate {self.n_bits}-bit fitness")
        u = np.arange(2**self.n_bits)
        shifts = np.arange(self.n_bits - 1, -1, -1)
        all_bits = (u[:, None] >> shifts[None, :]) & 1
        weight = all_bits @ np.asarray(self.instance.weights)
        profit = all_bits @ np.asarray(self.instance.profits)
        return np.where(weight <= self.instance.capacity, profit, 0)


class OneMax(BinaryProblem):
    name = "onemax"

    def __init__(self, length: int):
        if length < 1:
            raise InvalidArgumentError("OneMax length must be >= 1")
        self.n_bits = int(length)

    def fitness(self, bits) -> float:
        return int(np.sum(bits))


class TspProblem:
    """Tour-length objective, minimized."""

    name = "tsp"
    maximize = False

    def __init__(self, instance: TspInstance):
        self.instance = instance
        self.n_cities = instance.n

    def length(self, tour) -> float:
        return tsp_length(self.instance, tour)


class F6Problem:
    name = "f6"
    maximize = True

    def __init__(self, domain: F6Domain | None = None):
        self.domain = domain or F6Domain()

    def fitness(self, x, y):
        return f6(x, y)


def load_instance(path) -> KnapsackInstance | TspInstance | F6Domain | list:
    """Load a JSON problem file; the kind is inferred from its keys."""
    data = json.loads(Path(path).read_text())
    return instance_from_json(data)


def instance_from_json(data):
    if isinstance(data, list):
        if not data or not all(isinstance(v, int) and not isinstance(v, bool) for v in data):
            raise InvalidArgumentError("a table file must be a nonempty JSON array of integers")
        return list(data)
    if not isinstance(data, dict):
        raise InvalidArgumentError("problem file must hold a JSON object or integer array")
    if "distances" in data:
        return TspInstance.from_dict(data)
    if "weights" in data or "profits" in data:
        return KnapsackInstance.from_dict(data)
    if "lower" in data or "upper" in data:
        return F6Domain.from_dict(data)
    raise InvalidArgumentError(f"unrecognized problem keys: {sorted(data)}")
