"""Dense statevector simulator for an individual register entangled with a fitness register.

Layout: basis index ``u * 2**M + t`` with the N individual qubits in the high
bits and the M fitness qubits in the low bits.

A Grover iteration here is

    U_fit -> phase flip where fitness > threshold -> U_fit (uncompute) -> diffusion

where ``U_fit |u>|t> = |u>|t XOR f(u)>``. Uncomputing before the diffusion
returns the fitness register to |0>, so the reflection about the uniform
state acts on the individual register alone and the whole step equals the
textbook Grover operator with predicate ``f(u) > threshold``. Diffusing while
the fitness register is still entangled would leave that subspace, and
:func:`apply_diffusion_individual` refuses to do it.

States are mutated in place and never copied; a search that needs a fresh
state prepares one with :func:`init_uniform`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .core import Rng
from .errors import CapacityError, InvalidArgumentError, RangeError, StateError

MAX_QUBITS = 24
NORM_TOL = 1e-10
ENTANGLED_TOL = 1e-9


@dataclass(frozen=True)
class RegisterLayout:
    n_individual: int
    n_fitness: int

    def __post_init__(self):
        if self.n_individual < 1 or self.n_fitness < 1:
            raise InvalidArgumentError("both registers need at least one qubit")

    @property
    def dim_individual(self) -> int:
        return 1 << self.n_individual

    @property
    def dim_fitness(self) -> int:
        return 1 << self.n_fitness

    @property
    def size(self) -> int:
        return 1 << (self.n_individual + self.n_fitness)

    def check_capacity(self) -> None:
        total = self.n_individual + self.n_fitness
        if total > MAX_QUBITS:
            raise CapacityError(f"{total} qubits exceeds the {MAX_QUBITS}-qubit simulator limit")


class StateVector:
    """Complex amplitudes over both registers; single owner, mutated in place."""

    __slots__ = ("layout", "amplitudes")

    def __init__(self, layout: RegisterLayout, amplitudes):
        layout.check_capacity()
        amps = np.asarray(amplitudes, dtype=complex).ravel()
        if amps.size != layout.size:
            raise InvalidArgumentError(f"expected {layout.size} amplitudes, got {amps.size}")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise StateError(f"state is not normalized (|psi|^2 = {norm})")
        self.layout = layout
        self.amplitudes = amps

    def block(self) -> np.ndarray:
        """View with shape ``(2**N, 2**M)``: rows are individuals, columns fitness values."""
        return self.amplitudes.reshape(self.layout.dim_individual, self.layout.dim_fitness)

    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def probabilities(self, which: Literal["individual", "fitness"] = "individual") -> np.ndarray:
        b = self.block()
        p = b.real**2 + b.imag**2
        return p.sum(axis=1) if which == "individual" else p.sum(axis=0)


def init_uniform(layout: RegisterLayout) -> StateVector:
    """``2**(-N/2) * sum_u |u>|0>``."""
    layout.check_capacity()
    amps = np.zeros(layout.size, dtype=complex)
    amps[:: layout.dim_fitness] = 1.0 / np.sqrt(layout.dim_individual)
    return StateVector(layout, amps)


class FitnessUnitary:
    """``|u>|t> -> |u>|t XOR f(u)>`` as a precomputed basis permutation."""

    def __init__(self, layout: RegisterLayout, f):
        table = _tabulate(f, layout.dim_individual)
        if table.min() < 0 or table.max() >= layout.dim_fitness:
            raise RangeError(f"fitness values must lie in [0, {layout.dim_fitness}) for M={layout.n_fitness}")
        self.layout = layout
        self.table = table
        u = np.arange(layout.dim_individual)[:, None]
        t = np.arange(layout.dim_fitness)[None, :]
        # new[u, t] = old[u, t ^ f(u)]; XOR is its own inverse
        self.gather = (u * layout.dim_fitness + (t ^ table[:, None])).ravel()

    def apply(self, amps: np.ndarray) -> np.ndarray:
        return amps[self.gather]


class ThresholdPhase:
    """Sign flip on every basis state whose fitness register reads more than ``threshold``."""

    def __init__(self, layout: RegisterLayout, threshold: int):
        self.threshold = threshold
        self.fitness_sign = np.where(np.arange(layout.dim_fitness) > threshold, -1.0, 1.0)


def _tabulate(f, dim: int) -> np.ndarray:
    if callable(f):
        values = np.asarray(f(np.arange(dim)))
        if values.shape != (dim,):
            values = np.array([f(u) for u in range(dim)])
    else:
        values = np.asarray(f)
    if values.shape != (dim,):
        raise InvalidArgumentError(f"fitness table must have {dim} entries")
    if not np.all(values == np.round(values)):
        raise RangeError("fitness register values must be integers")
    return values.astype(np.int64)


def apply_fitness_xor(state: StateVector, f) -> StateVector:
    """Compute (or uncompute) fitness into the fitness register."""
    op = f if isinstance(f, FitnessUnitary) else FitnessUnitary(state.layout, f)
    state.amplitudes[:] = np.take(state.amplitudes, op.gather, mode="clip")
    return state


def apply_phase_oracle(state: StateVector, predicate) -> StateVector:
    """Negate amplitudes on basis states ``(u, t)`` where the predicate holds.

    ``predicate`` is a boolean array of shape ``(2**N, 2**M)`` (or flat), or a
    callable ``predicate(u, t)`` evaluated on broadcast index grids.
    """
    lay = state.layout
    if callable(predicate):
        u = np.arange(lay.dim_individual)[:, None]
        t = np.arange(lay.dim_fitness)[None, :]
        mask = np.broadcast_to(np.asarray(predicate(u, t), dtype=bool), (lay.dim_individual, lay.dim_fitness))
    else:
        mask = np.asarray(predicate, dtype=bool).reshape(lay.dim_individual, lay.dim_fitness)
    state.amplitudes[mask.ravel()] *= -1.0
    return state


def _check_disentangled(block: np.ndarray) -> None:
    flat = block.reshape(-1)
    col = np.ascontiguousarray(block[:, 0]).reshape(-1)
    outside = abs(np.vdot(flat, flat).real - np.vdot(col, col).real)
    if outside > ENTANGLED_TOL:
        raise StateError(
            f"fitness register is not |0> (mass {outside:.3g} outside it); uncompute before diffusing"
        )


def _diffuse(block: np.ndarray) -> None:
    # block shape (2**N, 2**M, batch); reflection about the uniform state on column t = 0
    col = block[:, 0]
    block[:, 0] = 2.0 * col.mean(axis=0) - col


def apply_diffusion_individual(state: StateVector) -> StateVector:
    """``2|s><s| - I`` on the individual register; requires the fitness register in |0>."""
    block = state.block()
    _check_disentangled(block)
    _diffuse(block[:, :, None])
    return state


def grover_iteration(state: StateVector, f, threshold: int) -> StateVector:
    """One Grover step with marking predicate ``f(u) > threshold``."""
    lay = state.layout
    op = f if isinstance(f, FitnessUnitary) else FitnessUnitary(lay, f)
    phase = threshold if isinstance(threshold, ThresholdPhase) else ThresholdPhase(lay, threshold)
    amps = state.amplitudes
    # gather indices are a permutation, so mode="clip" never clips; it only skips buffering
    scratch = np.take(amps, op.gather, mode="clip")
    rows = scratch.reshape(lay.dim_individual, lay.dim_fitness)
    np.multiply(rows, phase.fitness_sign, out=rows)
    np.take(scratch, op.gather, out=amps, mode="clip")
    block = state.block()
    _check_disentangled(block)
    _diffuse(block[:, :, None])
    return state


def _grover_kernel(amps: np.ndarray, lay: RegisterLayout, op: FitnessUnitary, phase: ThresholdPhase):
    # batched form of grover_iteration; amps shape (size, batch)
    out = amps[op.gather]
    rows = out.reshape(lay.dim_individual, lay.dim_fitness, -1)
    np.multiply(rows, phase.fitness_sign[None, :, None], out=rows)
    out = out[op.gather]
    block = out.reshape(lay.dim_individual, lay.dim_fitness, -1)
    _check_disentangled(block)
    _diffuse(block)
    return out


def grover_iteration_matrix(layout: RegisterLayout, f, threshold: int) -> np.ndarray:
    """Matrix of :func:`grover_iteration` restricted to the fitness-zero subspace.

    Column ``v`` is the result of one iteration applied to ``|v>|0>``. Built
    by pushing every such basis state through the same kernel in one batch.
    """
    layout.check_capacity()
    op = FitnessUnitary(layout, f)
    phase = ThresholdPhase(layout, threshold)
    d = layout.dim_individual
    batch = np.zeros((layout.size, d), dtype=complex)
    batch[np.arange(d) * layout.dim_fitness, np.arange(d)] = 1.0
    out = _grover_kernel(batch, layout, op, phase)
    return out.reshape(d, layout.dim_fitness, d)[:, 0, :]


def _draw(probs: np.ndarray, rng: Rng) -> int:
    cum = np.cumsum(probs)
    idx = int(np.searchsorted(cum, rng.uniform() * cum[-1], side="right"))
    return min(idx, probs.size - 1)


def measure_register(
    state: StateVector, which: Literal["individual", "fitness"], rng: Rng
) -> tuple[int, StateVector]:
    """Sample one register from its marginal and collapse the state onto the outcome.

    Consumes one uniform draw. Returns the outcome as an integer (big-endian
    over the register's qubits) and the same, now collapsed, state object.
    """
    if which not in ("individual", "fitness"):
        raise InvalidArgumentError("which must be 'individual' or 'fitness'")
    probs = state.probabilities(which)
    outcome = _draw(probs, rng)
    block = state.block()
    scale = 1.0 / np.sqrt(probs[outcome])
    if which == "individual":
        kept = block[outcome, :] * scale
        block[:] = 0.0
        block[outcome, :] = kept
    else:
        kept = block[:, outcome] * scale
        block[:] = 0.0
        block[:, outcome] = kept
    return outcome, state


class IndividualRegister:
    """Individual register alone, for searches whose oracle never writes fitness.

    Exactly the amplitudes :func:`grover_iteration` leaves on the fitness-zero
    column, at ``2**N`` instead of ``2**(N+M)`` memory. Used when the full
    pair of registers would be too large to iterate quickly.
    """

    __slots__ = ("n_qubits", "amplitudes")

    def __init__(self, n_qubits: int):
        if not 1 <= n_qubits <= MAX_QUBITS:
            raise CapacityError(f"individual register of {n_qubits} qubits outside [1, {MAX_QUBITS}]")
        self.n_qubits = n_qubits
        d = 1 << n_qubits
        self.amplitudes = np.full(d, 1.0 / np.sqrt(d), dtype=complex)

    def grover_iteration(self, marked: np.ndarray) -> None:
        self.amplitudes[marked] *= -1.0
        _diffuse(self.amplitudes[:, None, None])

    def measure(self, rng: Rng) -> int:
        probs = np.abs(self.amplitudes) ** 2
        outcome = _draw(probs, rng)
        self.amplitudes[:] = 0.0
        self.amplitudes[outcome] = 1.0
        return outcome

