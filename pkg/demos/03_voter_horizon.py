"""
Voter-model weights and the seeding horizon
===========================================

Influence under the voter model after t steps is additive with weights
w(t) = (M^T)^t 1.  The seeding value settles after a handful of steps.
"""

import numpy as np

from adaptive_seeding.generators import barabasi_albert
from adaptive_seeding.graph import build_instance, random_core
from adaptive_seeding.influence import voter_weights
from adaptive_seeding.greedy import run
from adaptive_seeding.evaluation import adaptive_value_exact

g = barabasi_albert(10_000, 10, 10, seed=0)
core = random_core(g, 100, seed=0)

w, path = voter_weights(g, 50, return_path=True)
# random-walk mass is conserved: the weights always sum to the node count
print("sum of weights at t=0,1,10,50:", path[[0, 1, 10, 50]].sum(axis=1))

k = 20
for t in (0, 1, 2, 5, 10, 15, 30, 50):
    inst = build_instance(g, core, w=path[t])
    sol = run(inst, k)
    print(f"t={t:2d}  value {adaptive_value_exact(inst, sol.S, sol.t):9.3f}  |S|={len(sol.S)}")
