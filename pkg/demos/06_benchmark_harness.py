"""
Benchmarks from a config file
=============================

The same runs the command line does, driven from Python: a performance
curve against the three baselines and a timing ladder against the
sampled-objective greedy.  Outputs land in demo-out/.
"""

import os
from adaptive_seeding import bench
from adaptive_seeding.config import read_config

here = os.path.dirname(os.path.abspath(__file__))

cfg = read_config(os.path.join(here, "configs", "performance.cfg"))
rows = bench.run_experiment(cfg, "demo-out/performance")
for r in rows:
    print(f"{r.algo:10s} k={r.budget:4d}  value {r.value:10.1f}")

cfg = read_config(os.path.join(here, "configs", "scaling.cfg"))
for r in bench.run_scaling(cfg, "demo-out/scaling"):
    print(f"{r['algo']:18s} n={r['n']:5d}  {r['time_ms']:10.2f} ms")
