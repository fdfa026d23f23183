# %% [markdown]
# # RQGA on a small knapsack
#
# Every individual's fitness is written into the fitness register, and the
# search keeps raising a threshold on it. Each round measures the fitness
# register and then the individual it is entangled with. A final search
# marking f(u) >= max reads out an individual holding the maximum.

# %%
from qevo import GroverBudget, KnapsackProblem, Rng, random_knapsack, rqga
from qevo.problems import knapsack_fitness, knapsack_oracle_dp

# %%
inst = random_knapsack(8, Rng(42))
print("weights", inst.weights, "profits", inst.profits, "capacity", inst.capacity)
print("DP optimum", knapsack_oracle_dp(inst))

# %%
res = rqga(KnapsackProblem(inst), 10, GroverBudget(), Rng(7))
print("threshold trace", res.threshold_trace)
print("individual", res.individual, "fitness", res.best_fitness)
print("classical check", knapsack_fitness(inst, res.individual))
print(f"{res.iterations} Grover iterations over {res.rounds} rounds")
