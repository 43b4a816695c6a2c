"""Experiment harness: performance curves and scaling runs to CSV/SVG."""
from __future__ import annotations

import csv
import logging
import math
import os
import platform
import time
from dataclasses import dataclass

import numpy as np

from . import __version__
from .config import ConfigError, ExperimentConfig, serialize_config
from .evaluation import (EXACT_LIMIT, adaptive_value_exact, adaptive_value_mc,
                         baseline_im, baseline_rf, baseline_rn, seeding_value)
from .generators import GeneratorSpec
from .graph import BipartiteInstance, Graph, build_instance, read_edge_list, random_core
from .greedy import SplitStrategy, run, run_saa, run_sample_and_prune
from .influence import ProbabilityModel, assign_probabilities, degree_weights, voter_weights
from .lp import run_lp
from .svg import render_csv

log = logging.getLogger(__name__)

RESULT_FIELDS = ["experiment", "algo", "budget", "value", "stderr", "time_ms", "seed"]
BASELINES = ("rn", "im", "rf")
SCALE_FIELDS = ["experiment", "algo", "n", "m", "k", "time_ms", "value", "seed"]


@dataclass
class ResultRow:
    experiment: str
    algo: str
    budget: int
    value: float
    stderr: float
    time_ms: float | None
    seed: int

    def as_csv(self):
        t = "" if self.time_ms is None else f"{self.time_ms:.3f}"
        return [self.experiment, self.algo, str(self.budget), repr(float(self.value)),
                repr(float(self.stderr)), t, str(self.seed)]


# ---------------------------------------------------------------------------
# inputs

def load_graph(cfg: ExperimentConfig) -> Graph:
    if cfg.graph_file:
        if not os.path.exists(cfg.graph_file):
            raise ConfigError(f"graph file {cfg.graph_file!r} not found")
        return read_edge_list(cfg.graph_file)
    return GeneratorSpec(cfg.generator, cfg.generator_params(), cfg.generator_seed).build()


def graph_weights(g: Graph, spec: str) -> np.ndarray:
    if spec == "degree":
        return degree_weights(g).w
    return voter_weights(g, int(spec.split(":")[1])).w


def choose_core(g: Graph, cfg: ExperimentConfig, rep: int = 0) -> np.ndarray:
    if cfg.core_file:
        with open(cfg.core_file) as f:
            ids = [int(tok) for line in f if not line.startswith("#") for tok in line.split()]
        pos = np.searchsorted(g.labels, ids)
        if np.any(pos >= g.node_count) or np.any(g.labels[np.minimum(pos, g.node_count - 1)] != ids):
            raise ConfigError("core file lists ids absent from the graph")
        return np.unique(pos)
    size = cfg.core_size or max(1, round(cfg.core_fraction * g.node_count))
    return random_core(g, size, [cfg.core_seed, rep])


def make_instance(g: Graph, w_all: np.ndarray, core, cfg: ExperimentConfig,
                  rep: int = 0) -> BipartiteInstance:
    inst = build_instance(g, core, w=w_all,
                          exclude_core_from_neighbors=cfg.exclude_core_from_neighbors)
    model = ProbabilityModel(cfg.prob_family, cfg.prob_mean, seed=cfg.prob_seed + rep)
    return assign_probabilities(inst, model)


def budgets_for(cfg: ExperimentConfig, m: int) -> list[int]:
    ks = list(cfg.budget) + [max(2, int(round(f * m))) for f in cfg.budget_fraction]
    return sorted(dict.fromkeys(ks))


# ---------------------------------------------------------------------------
# algorithms

def solve_algorithm(algo: str, inst: BipartiteInstance, k: int, seed: int,
                    workers: int = 1, saa_cap: int = 0):
    """Run one two-stage algorithm and return its first-stage set."""
    name, *args = algo.split(":")
    if name == "greedy":
        return run(inst, k, workers=workers).S
    if name == "greedy-geo":
        eps = float(args[0]) if args else 1.0
        return run(inst, k, SplitStrategy.geometric(eps), workers=workers).S
    if name == "snp":
        eps = float(args[0]) if args else 0.1
        ell = int(args[1]) if len(args) > 1 else 16
        return run_sample_and_prune(inst, k, eps, ell, seed=seed).S
    if name == "lp":
        return run_lp(inst, k).S
    if name == "saa-greedy":
        samples = int(args[0]) if args else inst.n
        if saa_cap:
            samples = min(samples, saa_cap)
        return run_saa(inst, k, samples, seed=seed).S
    raise ValueError(f"{algo!r} is not a two-stage algorithm")


def adaptive_value(inst, S, j, evaluation: str, seed: int):
    """``(value, stderr)`` of first-stage set ``S`` under the configured evaluator."""
    if evaluation == "exact" and len(inst.neighborhood(S)) <= EXACT_LIMIT:
        return adaptive_value_exact(inst, S, j), 0.0
    samples = int(evaluation.split(":")[1]) if evaluation.startswith("mc:") else 10_000
    r = adaptive_value_mc(inst, S, j, samples, seed)
    return r.mc, r.stderr


def evaluate_algorithm(algo, inst, k, core_w, cfg: ExperimentConfig, seed):
    name = algo.split(":")[0]
    if name == "im":
        return seeding_value(baseline_im(inst, min(k, inst.m), core_w), core_w), 0.0
    if name == "rn":
        return seeding_value(baseline_rn(inst, min(k, inst.m), seed), core_w), 0.0
    if name == "rf":
        return baseline_rf(inst, k, seed)[2], 0.0
    S = solve_algorithm(algo, inst, k, seed, cfg.workers, cfg.saa_sample_cap)
    return adaptive_value(inst, S, k - len(S), cfg.evaluation, seed)


def _warmup():
    # compile the kernels outside any timed region
    from .generators import complete_graph

    g = complete_graph(4)
    run(build_instance(g, [0, 1]), 3)


# ---------------------------------------------------------------------------
# drivers

def _write_log(out_dir, cfg, extra=""):
    with open(os.path.join(out_dir, "run.log"), "w") as f:
        f.write(f"# adaptive_seeding {__version__}, numpy {np.__version__}, "
                f"python {platform.python_version()}\n")
        f.write(serialize_config(cfg))
        f.write(extra)


def run_experiment(cfg: ExperimentConfig, out_dir) -> list[ResultRow]:
    """Run every (repetition, budget, algorithm) cell; write ``results.csv``,
    ``figure-<experiment>.svg`` and ``run.log`` into ``out_dir``."""
    cfg.validate()
    if cfg.graph_file and not os.path.exists(cfg.graph_file):
        raise ConfigError(f"graph file {cfg.graph_file!r} not found")
    os.makedirs(out_dir, exist_ok=True)
    _warmup()
    g = load_graph(cfg)
    w_all = graph_weights(g, cfg.weights)
    rows = []
    seeds_used = []
    for rep in range(cfg.repetitions):
        seed = cfg.seed + rep
        seeds_used.append(seed)
        inst = make_instance(g, w_all, choose_core(g, cfg, rep), cfg, rep)
        core_w = w_all[inst.core]
        for k in budgets_for(cfg, inst.m):
            for algo in cfg.algorithm:
                t0 = time.perf_counter()
                value, se = evaluate_algorithm(algo, inst, k, core_w, cfg, seed)
                dt = (time.perf_counter() - t0) * 1e3
                rows.append(ResultRow(cfg.experiment, algo, k, value, se,
                                      dt if cfg.timing else None, seed))
                log.info("%s rep=%d k=%d value=%.4g", algo, rep, k, value)
    csv_path = os.path.join(out_dir, "results.csv")
    with open(csv_path, "w", newline="") as f:
        wr = csv.writer(f, lineterminator="\n")
        wr.writerow(RESULT_FIELDS)
        for r in rows:
            wr.writerow(r.as_csv())
    render_csv(csv_path, os.path.join(out_dir, f"figure-{cfg.experiment}.svg"),
               title=cfg.experiment, log_y=cfg.log_scale)
    _write_log(out_dir, cfg, f"# seeds {seeds_used}\n")
    return rows


def ladder_instance(inst: BipartiteInstance, target_n: int, seed) -> BipartiteInstance:
    """Smallest random prefix of the core whose neighborhood reaches ``target_n``."""
    rng = np.random.default_rng(seed)
    perm = rng.permutation(inst.m)
    covered = np.zeros(inst.n, dtype=bool)
    count = 0
    for i, v in enumerate(perm):
        nb = inst.core_neighbors(v)
        count += int(np.count_nonzero(~covered[nb]))
        covered[nb] = True
        if count >= target_n:
            return inst.subsample_core(perm[:i + 1])
    raise ValueError(f"core neighborhood has only {count} nodes, need {target_n}")


def run_scaling(cfg: ExperimentConfig, out_dir) -> list[dict]:
    """Wall time of each algorithm on core-subsampled instances of growing
    size; writes ``scaling.csv`` and ``figure-<experiment>-time.svg``."""
    cfg.validate()
    if not cfg.scale_size:
        raise ConfigError("scaling run needs at least one scale_size")
    if not cfg.budget:
        raise ConfigError("scaling run needs absolute budgets")
    baselines = [a for a in cfg.algorithm if a.split(":")[0] in BASELINES]
    if baselines:
        raise ConfigError(f"scaling runs time two-stage algorithms only, not {baselines}")
    os.makedirs(out_dir, exist_ok=True)
    _warmup()
    g = load_graph(cfg)
    w_all = graph_weights(g, cfg.weights)
    full = make_instance(g, w_all, choose_core(g, cfg), cfg)
    rows = []
    for size in sorted(cfg.scale_size):
        inst = ladder_instance(full, size, [cfg.seed, size])
        for k in cfg.budget:
            for algo in cfg.algorithm:
                times = []
                for _ in range(max(1, cfg.scale_repeats)):
                    t0 = time.perf_counter()
                    S = solve_algorithm(algo, inst, k, cfg.seed, 1, cfg.saa_sample_cap)
                    times.append((time.perf_counter() - t0) * 1e3)
                value = adaptive_value(inst, S, k - len(S), cfg.evaluation, cfg.seed)[0]
                rows.append(dict(experiment=cfg.experiment, algo=f"{algo}@k={k}",
                                 n=inst.n, m=inst.m, k=k, time_ms=float(np.median(times)),
                                 value=value, seed=cfg.seed))
    path = os.path.join(out_dir, "scaling.csv")
    with open(path, "w", newline="") as f:
        wr = csv.DictWriter(f, SCALE_FIELDS, lineterminator="\n")
        wr.writeheader()
        for r in rows:
            wr.writerow({**r, "time_ms": f"{r['time_ms']:.3f}", "value": repr(r["value"])})
    render_csv(path, os.path.join(out_dir, f"figure-{cfg.experiment}-time.svg"),
               x="n", y="time_ms", title=cfg.experiment, log_y=True)
    _write_log(out_dir, cfg)
    return rows
