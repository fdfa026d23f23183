# %% [markdown]
# # Qubit genotypes
#
# A qubit gene is an amplitude pair (alpha, beta). Observing it gives bit 1
# with probability beta**2. GQA starts every gene at pi/4 and nudges the
# angle toward the best string seen so far.

# %%
import math

import numpy as np

from qevo import GqaParams, KnapsackProblem, QubitChromosome, Rng, observe, random_knapsack, rotate, run_gqa
from qevo.core import QubitGene
from qevo.problems import knapsack_oracle_dp

# %%
gene = QubitGene(1 / math.sqrt(2), 1 / math.sqrt(2))
for step in range(5):
    print(f"step {step}: P(1) = {gene.p_one:.4f}")
    gene = rotate(gene, 0.01 * math.pi)

# %% Observation frequencies track beta**2
chrom = QubitChromosome.from_angles([0.2, math.pi / 4, 1.3])
rng = Rng(0)
freq = np.mean([observe(chrom, rng) for _ in range(5000)], axis=0)
print("observed:", freq.round(3), "expected:", chrom.p_one.round(3))

# %% GQA on a 20-item knapsack
inst = random_knapsack(20, Rng(12345))
opt = knapsack_oracle_dp(inst)
rec = run_gqa(KnapsackProblem(inst), GqaParams(generations=200), Rng(1))
series = rec.trace.best_series()
print(f"DP optimum {opt}; GQA best {rec.best_fitness:.0f}")
print("best-so-far every 25 generations:", series[::25])
