"""Baselines and adaptive-value evaluation.

The adaptive value of a first-stage set ``S`` with second-stage budget
``j`` is ``E[sum of the j largest weights among realized N(S)]``.  Since
influence is additive, it has an exact form: sort ``N(S)`` by weight; the
``i``-th node is taken iff it realizes and fewer than ``j`` heavier nodes
did, which is a Poisson-binomial prefix probability.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .graph import BipartiteInstance
from .greedy import objective

EXACT_LIMIT = 5000


@dataclass(frozen=True)
class AdaptiveValueReport:
    exact: float | None
    mc: float | None
    stderr: float | None
    samples: int
    method: str


def _sorted_neighborhood(inst, S):
    nb = inst.neighborhood(S)
    return nb[np.argsort(inst.rank[nb], kind="stable")]


# ---------------------------------------------------------------------------
# baselines

def baseline_rn(inst: BipartiteInstance, k: int, seed) -> np.ndarray:
    """``k`` core positions drawn uniformly without replacement."""
    if k > inst.m:
        raise ValueError(f"k={k} exceeds core size {inst.m}")
    rng = np.random.default_rng(seed)
    return np.sort(rng.choice(inst.m, size=k, replace=False))


def baseline_im(inst: BipartiteInstance, k: int, weights) -> np.ndarray:
    """Top-``k`` core positions by their own weight, ties by ascending id."""
    if k > inst.m:
        raise ValueError(f"k={k} exceeds core size {inst.m}")
    weights = np.asarray(weights, dtype=np.float64)
    return np.sort(np.lexsort((inst.core, -weights))[:k])


def seeding_value(S, weights) -> float:
    """Direct seeding value: the sum of the chosen core nodes' weights."""
    return float(np.sum(np.asarray(weights)[np.asarray(S, dtype=np.int64)]))


def baseline_rf(inst: BipartiteInstance, k: int, seed):
    """Random friend: ``ceil(k/2)`` random core nodes, one random neighbor each.

    Returns ``(core positions, neighbor local indices, value)`` where the
    value is the expected influence of the distinct chosen neighbors.
    """
    rng = np.random.default_rng(seed)
    half = min(math.ceil(k / 2), inst.m)
    S = np.sort(rng.choice(inst.m, size=half, replace=False))
    picks = []
    for v in S:
        nb = inst.core_neighbors(v)
        if len(nb):
            picks.append(int(nb[rng.integers(len(nb))]))
    chosen = np.unique(np.array(picks, dtype=np.int64))
    value = float(np.sum(inst.prob[chosen] * inst.weight[chosen]))
    return S, chosen, value


# ---------------------------------------------------------------------------
# adaptive value

def admission_probabilities(p: np.ndarray, j: int) -> np.ndarray:
    """``P(fewer than j of p[:i] realize)`` for every ``i``.

    Poisson-binomial prefix DP truncated at ``j`` states, ``O(len(p) * j)``.
    """
    n = len(p)
    out = np.zeros(n)
    if j <= 0:
        return out
    dist = np.zeros(j)     # dist[c] = P(exactly c realized so far), c < j
    dist[0] = 1.0
    for i in range(n):
        out[i] = dist.sum()
        pi = p[i]
        shifted = np.empty(j)
        shifted[0] = 0.0
        shifted[1:] = dist[:-1]
        dist = dist * (1.0 - pi) + shifted * pi
    return out


def adaptive_value_exact(inst: BipartiteInstance, S, j: float,
                         limit: int = EXACT_LIMIT) -> float:
    """Exact expected best second-stage value for first-stage set ``S``."""
    if j < 0:
        raise ValueError("second-stage budget must be non-negative")
    nb = _sorted_neighborhood(inst, S)
    if len(nb) > limit:
        raise ValueError(f"|N(S)|={len(nb)} exceeds the exact limit {limit}; "
                         "use adaptive_value_mc")
    j = int(math.floor(j + 1e-12))
    if j == 0 or len(nb) == 0:
        return 0.0
    p, w = inst.prob[nb], inst.weight[nb]
    if j >= len(nb):
        return float(p @ w)
    return float(np.sum(p * w * admission_probabilities(p, j)))


def adaptive_value_enumerate(inst: BipartiteInstance, S, j: int) -> float:
    """Same quantity by summing over all ``2^|N(S)|`` realizations."""
    nb = _sorted_neighborhood(inst, S)
    p, w = inst.prob[nb], inst.weight[nb]
    total = 0.0
    for bits in itertools.product((0, 1), repeat=len(nb)):
        b = np.array(bits, dtype=bool)
        pr = np.prod(np.where(b, p, 1.0 - p))
        if pr == 0:
            continue
        total += pr * np.sort(w[b])[::-1][:int(j)].sum()
    return float(total)


def _mc_values(p, w, j, samples, rng, chunk=4096):
    out = np.empty(samples)
    for lo in range(0, samples, chunk):
        hi = min(samples, lo + chunk)
        real = rng.random((hi - lo, len(p))) < p
        taken = real & (np.cumsum(real, axis=1) <= j)
        out[lo:hi] = taken @ w
    return out


def adaptive_value_mc(inst: BipartiteInstance, S, j: float, samples: int,
                      seed, workers: int = 1) -> AdaptiveValueReport:
    """Monte-Carlo estimate of the adaptive value with its standard error.

    Samples are split into ``workers`` partitions with their own seed
    streams; partial sums are combined in partition order so the result
    does not depend on how partitions are scheduled.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    nb = _sorted_neighborhood(inst, S)
    j = int(math.floor(j + 1e-12))
    if j == 0 or len(nb) == 0:
        return AdaptiveValueReport(None, 0.0, 0.0, samples, "mc")
    p, w = inst.prob[nb], inst.weight[nb]
    parts = max(1, int(workers))
    sizes = [samples // parts + (i < samples % parts) for i in range(parts)]
    streams = np.random.SeedSequence(seed).spawn(parts)
    vals = [_mc_values(p, w, j, s, np.random.default_rng(ss))
            for s, ss in zip(sizes, streams) if s]
    vals = np.concatenate(vals)
    se = float(vals.std(ddof=1) / math.sqrt(samples)) if samples > 1 else 0.0
    return AdaptiveValueReport(None, float(vals.mean()), se, samples, "mc")


def evaluate(inst, S, j, samples=0, seed=0, exact=True) -> AdaptiveValueReport:
    """Exact value when feasible, plus an MC estimate when ``samples > 0``."""
    ex = None
    if exact:
        try:
            ex = adaptive_value_exact(inst, S, j)
        except ValueError:
            ex = None
    if samples > 0:
        r = adaptive_value_mc(inst, S, j, samples, seed)
        return AdaptiveValueReport(ex, r.mc, r.stderr, samples,
                                   "exact+mc" if ex is not None else "mc")
    if ex is None:
        raise ValueError("exact evaluation infeasible and no samples requested")
    return AdaptiveValueReport(ex, None, None, 0, "exact")


def estimate_F_sampling(inst: BipartiteInstance, q, samples: int, seed,
                        support=None) -> float:
    """Sampled estimate of ``F(p ⊗ q) = E[sum of w over the realized set]``
    where ``u`` is in the set with probability ``p_u q_u``.

    ``support`` restricts sampling to a subset of neighbors (entries outside
    it must have ``q = 0``); the cost is linear in its size per sample.
    """
    from . import _kernels as K

    q = np.asarray(q, dtype=np.float64)
    idx = np.arange(inst.n) if support is None else np.asarray(support, dtype=np.int64)
    p_eff = np.ascontiguousarray(inst.prob[idx] * q[idx])
    w = np.ascontiguousarray(inst.weight[idx])
    rng = np.random.default_rng(seed)
    total = 0.0
    chunk = max(1, 2_000_000 // max(1, len(idx)))
    for lo in range(0, samples, chunk):
        draws = rng.random((min(chunk, samples - lo), len(idx)))
        total += K.saa_fill(p_eff, w, draws)
    return total / samples


# ---------------------------------------------------------------------------
# exhaustive optima (small instances only)

def _subsets(m, max_size):
    for r in range(0, min(m, max_size) + 1):
        yield from itertools.combinations(range(m), r)


def opt_non_adaptive(inst: BipartiteInstance, k: int):
    """``max_S O(N(S), k - |S|)`` by enumeration.  Returns ``(value, S)``."""
    best, arg = 0.0, ()
    for S in _subsets(inst.m, k):
        v = objective(inst, S, k - len(S))
        if v > best:
            best, arg = v, S
    return best, arg


def opt_adaptive(inst: BipartiteInstance, k: int):
    """``max_S A(S)`` with the exact evaluator.  Returns ``(value, S)``."""
    best, arg = 0.0, ()
    for S in _subsets(inst.m, k):
        v = adaptive_value_exact(inst, S, k - len(S))
        if v > best:
            best, arg = v, S
    return best, arg


@dataclass(frozen=True)
class GapReport:
    opt_adaptive: float
    opt_non_adaptive: float
    best_adaptive_set: tuple
    best_non_adaptive_set: tuple

    @property
    def holds(self) -> bool:
        return self.opt_adaptive <= self.opt_non_adaptive + 1e-9


def audit_adaptivity_gap(inst: BipartiteInstance, k: int) -> GapReport:
    """Check that the non-adaptive optimum dominates the adaptive one."""
    if inst.m > 10 or inst.n > 12:
        raise ValueError("audit needs m <= 10 and n <= 12")
    a, Sa = opt_adaptive(inst, k)
    na, Sna = opt_non_adaptive(inst, k)
    rep = GapReport(a, na, Sa, Sna)
    assert rep.holds, f"adaptivity gap violated: OPT_A={a} > OPT_NA={na}"
    return rep
