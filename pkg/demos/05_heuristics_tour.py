# %% [markdown]
# # The classical heuristics side by side
#
# QIGA and QSE on an 8-city tour, QEA on OneMax, and the pulse EDA on F6.
# The last part shows the benchmark harness doing the same through a config.

# %%
from qevo import (
    F6Problem,
    OneMax,
    QeaParams,
    QieaParams,
    QigaParams,
    QseParams,
    Rng,
    TspProblem,
    random_tsp,
    run_qea,
    run_qiea,
    run_qiga,
    run_qse,
    tsp_oracle_bruteforce,
)
from qevo.bench import load_config, run_bench, summary_json

# %%
tsp = random_tsp(8, Rng(3))
_, opt = tsp_oracle_bruteforce(tsp)
qiga = run_qiga(tsp, QigaParams(), Rng(1))
qse = run_qse(TspProblem(tsp), QseParams(), Rng(1))
print(f"optimal tour {opt:.4f}  QIGA {qiga.best_fitness:.4f}  QSE {qse.best_fitness:.4f}")

# %%
qea = run_qea(OneMax(16), QeaParams(generations=100), Rng(2))
print("QEA OneMax-16 best", qea.best_fitness, "after", qea.evals, "evaluations")

# %%
qiea = run_qiea(F6Problem(), QieaParams(), Rng(4))
x, y = qiea.best_individual
print(f"pulse EDA on F6: {qiea.best_fitness:.5f} at ({x:.4f}, {y:.4f})")

# %% Through the harness: ten trials, seeds 100..109
cfg = load_config(algorithm="qse", problem={"kind": "random_knapsack", "n": 20, "seed": 12345},
                  seed=100, trials=10, generations=300, format="json")
records, summary = run_bench(cfg)
print(summary_json(summary))
