# %% [markdown]
# # Maximum finding and its query count
#
# Start from a random index, search for anything larger, move there, and
# stop once a search comes back empty. The final, empty search spends its
# whole budget, which is proportional to the square root of the table size,
# so the total should grow like sqrt(size).

# %%
import numpy as np

from qevo import GroverBudget, Rng, find_maximum, query_stats

# %%
table = Rng(5).permutation(1024)[:64]
res = find_maximum(table, GroverBudget(), Rng(0))
print("argmax", int(np.argmax(table)), "found", res.index)
print("threshold trace", res.threshold_trace)
print("grover iterations", res.iterations, "measurement rounds", res.rounds)

# %% Mean iterations across sizes
counts = {}
for size in (16, 64, 256, 1024):
    counts[size] = [find_maximum(Rng(size + s).permutation(size), GroverBudget(), Rng(s)).iterations for s in range(50)]
    print(f"size {size:5d}: mean iterations {np.mean(counts[size]):7.1f}")
fit = query_stats(counts)
print(f"log-log slope {fit.slope:.3f}")
