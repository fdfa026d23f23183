# %% [markdown]
# # Grover iterations on the paired registers
#
# The individual register holds N qubits and the fitness register M. One
# iteration computes fitness, flips the sign where it exceeds the threshold,
# uncomputes fitness and reflects the individual register about the
# uniform state.

# %%
import math

import numpy as np

from qevo import RegisterLayout, grover_iteration, init_uniform
from qevo.qsim import grover_iteration_matrix

# %% With 4 states and one marked, one iteration is exact
lay = RegisterLayout(2, 1)
state = grover_iteration(init_uniform(lay), [0, 0, 1, 0], 0)
print("P(marked) after one iteration:", state.probabilities()[2])

# %% With 16 states the success probability follows sin^2((2k+1) theta)
lay = RegisterLayout(4, 2)
f = np.where(np.arange(16) == 9, 3, 0)
state = init_uniform(lay)
theta = math.asin(1 / 4)
for k in range(1, 5):
    grover_iteration(state, f, 2)
    print(f"k={k}: simulated {state.probabilities()[9]:.6f}  closed form {math.sin((2 * k + 1) * theta) ** 2:.6f}")

# %% The whole step as a matrix on the fitness-zero subspace
G = grover_iteration_matrix(RegisterLayout(2, 2), [0, 3, 1, 2], 1)
print(np.round(G.real, 3))
