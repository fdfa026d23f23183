"""Quantum-inspired evolutionary heuristics next to Grover-based search on a statevector simulator.

Conventions used throughout:

* observing a qubit gene ``(alpha, beta)`` gives bit 1 with probability ``beta**2``;
* bit strings are big-endian when read as integers (locus 0 is the most significant bit);
* every stochastic routine takes an explicit :class:`Rng`.
"""

from .core import (
    QubitChromosome,
    QubitGene,
    Rng,
    RunRecord,
    RunTrace,
    TerminationCondition,
    observe,
    observe_population,
    rotate,
)
from .errors import (
    CapacityError,
    ConfigError,
    DomainError,
    InvalidArgumentError,
    QevoError,
    RangeError,
    SizeError,
    StateError,
)
from .gqa import GqaParams, init_gqa, run_gqa, update_rotation
from .grover_rqga import GroverBudget, ThresholdOracle, find_maximum, grover_unknown, query_stats, rqga
from .problems import (
    F6Domain,
    F6Problem,
    KnapsackInstance,
    KnapsackProblem,
    OneMax,
    TspInstance,
    TspProblem,
    f6,
    knapsack_fitness,
    knapsack_oracle_dp,
    knapsack_repair,
    random_knapsack,
    random_tsp,
    tsp_length,
    tsp_oracle_bruteforce,
)
from .pulse_eda import QieaParams, run_qiea
from .qiga import QigaParams, interference_crossover, run_qiga
from .qsim import (
    RegisterLayout,
    StateVector,
    apply_diffusion_individual,
    apply_fitness_xor,
    apply_phase_oracle,
    grover_iteration,
    init_uniform,
    measure_register,
)
from .swarm_qea import QeaParams, QseParams, run_qea, run_qse

__version__ = "0.1.0"
