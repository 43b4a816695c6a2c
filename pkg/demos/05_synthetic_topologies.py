"""
Four synthetic topologies
=========================

Preferential attachment, small world, a Kronecker power of a star, and a
configuration model with power-law degrees: how big is the friendship
paradox on each, and how much does adaptive seeding gain over seeding the
core directly?
"""

from adaptive_seeding.generators import (barabasi_albert, watts_strogatz, kronecker, star_graph,
                                         kronecker_edge_count, configuration_model,
                                         powerlaw_degree_sequence)
from adaptive_seeding.graph import build_instance, paradox_stats, random_core
from adaptive_seeding.greedy import run, SplitStrategy
from adaptive_seeding.evaluation import baseline_im, seeding_value

# a star power of 9 would have (10^9 - 4^9)/2 edges, far beyond memory
print("Kronecker star^9 edges:", kronecker_edge_count(star_graph(3), 9))

seq = powerlaw_degree_sequence(20_000, 2.5, 5, seed=1)
conf, lost = configuration_model(seq, seed=1, return_discarded=True)
print(f"configuration model discarded {lost} of {seq.sum()} stubs")

graphs = {
    "BA": barabasi_albert(20_000, 10, 10, seed=1),
    "WS": watts_strogatz(20_000, 20, 0.3, seed=1),
    "Kronecker": kronecker(star_graph(3), 7),
    "configuration": conf,
}
for name, g in graphs.items():
    core = random_core(g, 200, seed=1)
    st = paradox_stats(g, core)
    deg = g.degrees.astype(float)
    inst = build_instance(g, core, w=deg)
    k = 20
    sol = run(inst, k, SplitStrategy.geometric(0.2))
    im = seeding_value(baseline_im(inst, k, deg[inst.core]), deg[inst.core])
    print(f"{name:14s} paradox ratio {st.ratio:5.2f}   adaptive/IM {sol.non_adaptive_value / im:5.2f}")
