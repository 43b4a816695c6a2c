"""
Sweeping the realization probability
====================================

Friends show up with probabilities drawn from five families, each
calibrated to the same mean.  Value grows with the mean for all of them.
"""

import numpy as np

from adaptive_seeding.generators import barabasi_albert
from adaptive_seeding.graph import build_instance, random_core
from adaptive_seeding.influence import ProbabilityModel, assign_probabilities
from adaptive_seeding.greedy import run
from adaptive_seeding.evaluation import adaptive_value_exact, adaptive_value_mc

g = barabasi_albert(20_000, 10, 10, seed=2)
base = build_instance(g, random_core(g, 200, seed=2))
k = 20

families = ["uniform", "beta", "normal", "power_law", "inverse_degree"]
means = [0.1, 0.3, 0.5, 0.7, 0.9]
print("mean  " + "  ".join(f"{f:>14s}" for f in families))
for pbar in means:
    row = []
    for fam in families:
        inst = assign_probabilities(base, ProbabilityModel(fam, pbar, seed=0))
        sol = run(inst, k)
        try:
            v = adaptive_value_exact(inst, sol.S, sol.t)
        except ValueError:   # neighborhood too large for the exact evaluator
            v = adaptive_value_mc(inst, sol.S, sol.t, 20_000, seed=0).mc
        row.append(v)
    print(f"{pbar:.1f}  " + "  ".join(f"{v:14.1f}" for v in row))
