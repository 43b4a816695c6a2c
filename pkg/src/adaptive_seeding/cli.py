"""Command line entry point: ``adaptive-seeding <subcommand>``."""
from __future__ import annotations

import argparse
import contextlib
import logging
import sys

import numpy as np

from . import bench
from .config import ExperimentConfig, read_config
from .evaluation import adaptive_value_exact, adaptive_value_mc
from .generators import (barabasi_albert, configuration_model, kronecker,
                         powerlaw_degree_sequence, star_graph, watts_strogatz)
from .graph import (build_instance, dump_instance, paradox_stats, random_core,
                    read_edge_list, restore_instance, write_edge_list, write_id_map)
from .greedy import SplitStrategy, read_solution_record, run, run_sample_and_prune
from .influence import ProbabilityModel, assign_probabilities
from .lp import build_lp, pipage_round, solve_lp, write_lp


def _out(path):
    if path and path != "-":
        return open(path, "w")
    return contextlib.nullcontext(sys.stdout)


def cmd_generate(a):
    if a.kind in ("ba", "barabasi_albert"):
        g = barabasi_albert(a.n, a.m0 or a.attach, a.attach, a.seed)
    elif a.kind in ("ws", "watts_strogatz"):
        g = watts_strogatz(a.n, a.ring_degree, a.beta, a.seed)
    elif a.kind == "kronecker":
        g = kronecker(star_graph(a.star_leaves), a.power)
    elif a.kind in ("configuration", "config"):
        seq = powerlaw_degree_sequence(a.n, a.exponent, a.min_degree, seed=a.seed)
        g, lost = configuration_model(seq, a.seed, return_discarded=True)
        print(f"discarded stubs: {lost}", file=sys.stderr)
    else:
        raise SystemExit(f"unknown kind {a.kind!r}")
    with _out(a.output) as f:
        write_edge_list(g, f)
    print(f"{g.node_count} nodes, {g.edge_count} edges", file=sys.stderr)


def _instance_from_args(a):
    if a.instance:
        with open(a.instance) as f:
            inst = restore_instance(f)
        g = None
    else:
        g = read_edge_list(a.graph)
        if a.core_file:
            ids = np.loadtxt(a.core_file, dtype=np.int64, ndmin=1)
            core = np.searchsorted(g.labels, ids)
        else:
            size = a.core_size or max(1, round(a.core_fraction * g.node_count))
            core = random_core(g, size, a.core_seed)
        w = None
        if a.weights.startswith("voter:"):
            w = bench.graph_weights(g, a.weights)
        inst = build_instance(g, core, w=w,
                              exclude_core_from_neighbors=a.exclude_core_from_neighbors)
    if a.prob_family != "keep":
        inst = assign_probabilities(inst, ProbabilityModel(a.prob_family, a.prob_mean,
                                                           seed=a.prob_seed))
    return g, inst


def cmd_stats(a):
    g = read_edge_list(a.graph)
    size = a.core_size or max(1, round(a.core_fraction * g.node_count))
    core = random_core(g, size, a.core_seed)
    st = paradox_stats(g, core)
    print(f"nodes\t{g.node_count}\nedges\t{g.edge_count}\ncore\t{len(core)}")
    print(f"mean_degree_core\t{st.mean_degree_core:.4f}")
    print(f"mean_degree_neighbors\t{st.mean_degree_neighbors:.4f}")
    print(f"ratio\t{st.ratio:.4f}")
    if a.id_map:
        with open(a.id_map, "w") as f:
            write_id_map(g, f)


def cmd_seed(a):
    _, inst = _instance_from_args(a)
    if a.dump_instance:
        with open(a.dump_instance, "w") as f:
            dump_instance(inst, f)
    if a.algo == "greedy":
        sol = run(inst, a.k, workers=a.workers, lazy=a.lazy)
    elif a.algo == "greedy-geo":
        sol = run(inst, a.k, SplitStrategy.geometric(a.epsilon), workers=a.workers)
    elif a.algo == "snp":
        sol = run_sample_and_prune(inst, a.k, a.epsilon, a.ell, seed=a.seed)
    else:
        lp = build_lp(inst, a.k)
        if a.dump_lp:
            with open(a.dump_lp, "w") as f:
                write_lp(lp, f)
        sol = pipage_round(inst, solve_lp(lp), a.k)
    with _out(a.output) as f:
        f.write(sol.to_record())


def cmd_eval(a):
    with open(a.instance) as f:
        inst = restore_instance(f)
    with open(a.solution) as f:
        rec = read_solution_record(f.read())
    pos = np.searchsorted(inst.core, rec["seeds"])
    j = rec["k"] - len(pos)
    print(f"S\t{' '.join(map(str, rec['seeds']))}\nt\t{j}")
    print(f"non_adaptive_value\t{rec['value']!r}")
    if a.exact:
        print(f"exact\t{float(adaptive_value_exact(inst, pos, j))!r}")
    if a.samples:
        r = adaptive_value_mc(inst, pos, j, a.samples, a.seed)
        print(f"mc\t{r.mc!r}\nstderr\t{r.stderr!r}\nsamples\t{r.samples}")


def _config_from(a) -> ExperimentConfig:
    cfg = read_config(a.config)
    if a.workers:
        cfg.workers = a.workers
    return cfg


def cmd_bench(a):
    rows = bench.run_experiment(_config_from(a), a.out)
    print(f"{len(rows)} rows written to {a.out}/results.csv")


def cmd_scale(a):
    rows = bench.run_scaling(_config_from(a), a.out)
    print(f"{len(rows)} rows written to {a.out}/scaling.csv")


def _instance_args(p):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="edge-list file")
    src.add_argument("--instance", help="instance dump file")
    p.add_argument("--core-file")
    p.add_argument("--core-size", type=int, default=0)
    p.add_argument("--core-fraction", type=float, default=0.01)
    p.add_argument("--core-seed", type=int, default=0)
    p.add_argument("--weights", default="degree", help="degree | voter:T")
    p.add_argument("--exclude-core-from-neighbors", action="store_true")
    p.add_argument("--prob-family", default="uniform",
                   help="uniform|beta|normal|power_law|inverse_degree|keep")
    p.add_argument("--prob-mean", type=float, default=1.0)
    p.add_argument("--prob-seed", type=int, default=0)


def build_parser():
    ap = argparse.ArgumentParser(prog="adaptive-seeding", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("generate", help="write a synthetic graph as an edge list")
    p.add_argument("--kind", required=True,
                   help="ba | ws | kronecker | configuration")
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--m0", type=int, default=0)
    p.add_argument("--attach", type=int, default=10)
    p.add_argument("--ring-degree", type=int, default=20)
    p.add_argument("--beta", type=float, default=0.3)
    p.add_argument("--power", type=int, default=7)
    p.add_argument("--star-leaves", type=int, default=3)
    p.add_argument("--exponent", type=float, default=2.5)
    p.add_argument("--min-degree", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("stats", help="friendship-paradox statistics of a random core")
    p.add_argument("--graph", required=True)
    p.add_argument("--core-size", type=int, default=0)
    p.add_argument("--core-fraction", type=float, default=0.01)
    p.add_argument("--core-seed", type=int, default=0)
    p.add_argument("--id-map", help="also write the compact/original id map here")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("seed", help="compute a first-stage seed set")
    _instance_args(p)
    p.add_argument("--algo", choices=["greedy", "greedy-geo", "snp", "lp"], default="greedy")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--ell", type=int, default=16)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--lazy", action="store_true", help="lazy (CELF) marginal updates")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dump-instance")
    p.add_argument("--dump-lp")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_seed)

    p = sub.add_parser("eval", help="adaptive value of a stored solution")
    p.add_argument("--instance", required=True)
    p.add_argument("--solution", required=True)
    p.add_argument("--samples", type=int, default=0)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_eval)

    for name, func in (("bench", cmd_bench), ("scale", cmd_scale)):
        p = sub.add_parser(name, help=f"run a {name} experiment from a config file")
        p.add_argument("--config", required=True)
        p.add_argument("--out", required=True)
        p.add_argument("--workers", type=int, default=0)
        p.set_defaults(func=func)
    return ap


def main(argv=None):
    a = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    a.func(a)


if __name__ == "__main__":
    main()
