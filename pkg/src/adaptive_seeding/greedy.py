"""Budget-split greedy for the non-adaptive relaxation.

For every split ``(k - t, t)`` of the budget, the first-stage set is grown
greedily on the monotone submodular function ``f_t(S) = O(N(S), t)``; the
best split wins.  Marginals are evaluated by merging the rank-sorted
neighbor list of a candidate into the sorted list of ``N(S)`` on the fly.
"""
from __future__ import annotations

import heapq
import logging
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .graph import BipartiteInstance
from .knapsack import SortedItemList, allocation, solve

log = logging.getLogger(__name__)


@dataclass
class SeedingSolution:
    S: np.ndarray                   # core positions (indices into inst.core)
    seeds: np.ndarray               # core node ids
    t: float                        # second-stage budget k - |S|
    k: int
    q: np.ndarray                   # (n,) second-stage allocation
    non_adaptive_value: float
    split_values: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    def budget_used(self, inst: BipartiteInstance) -> float:
        return len(self.S) + float(inst.prob @ self.q)

    def to_record(self) -> str:
        ids = " ".join(str(int(s)) for s in self.seeds)
        return (f"algo\t{self.diagnostics.get('algo', '')}\n"
                f"k\t{self.k}\nS\t{ids}\nt\t{self.t:g}\n"
                f"value\t{float(self.non_adaptive_value)!r}\n")


def read_solution_record(text: str) -> dict:
    """Parse the output of :meth:`SeedingSolution.to_record`."""
    out = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        key, _, val = line.partition("\t")
        out[key] = val
    seeds = [int(s) for s in out.get("S", "").split()]
    return {"algo": out.get("algo", ""), "k": int(out["k"]), "seeds": seeds,
            "t": float(out["t"]), "value": float(out["value"])}


@dataclass(frozen=True)
class SplitStrategy:
    """Which second-stage budgets ``t`` to try: all of ``1..k-1`` or a
    geometric ladder ``ceil((1+eps)^j)``."""

    mode: str = "all"
    epsilon: float = 1.0

    @classmethod
    def geometric(cls, epsilon: float = 1.0) -> "SplitStrategy":
        return cls("geometric", epsilon)

    def splits(self, k: int) -> list[int]:
        if k < 2:
            return []
        if self.mode == "all":
            return list(range(1, k))
        if self.mode != "geometric":
            raise ValueError(f"unknown split mode {self.mode!r}")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        out, j = [], 0
        while True:
            t = math.ceil((1 + self.epsilon) ** j - 1e-12)
            if t > k - 1:
                break
            if not out or out[-1] != t:
                out.append(t)
            j += 1
        return out


# ---------------------------------------------------------------------------
# helpers

class _Ranked:
    """Rank-space view of an instance, shared read-only by all workers."""

    def __init__(self, inst: BipartiteInstance):
        self.inst = inst
        self.W = np.ascontiguousarray(inst.weight[inst.order])
        self.P = np.ascontiguousarray(inst.prob[inst.order])
        self.ptr = np.ascontiguousarray(inst.inc_indptr)
        self.ranks = np.ascontiguousarray(inst.rank[inst.inc_indices])


class _SetState:
    """Sorted ranks of ``N(S)`` plus a membership mask."""

    def __init__(self, R: _Ranked):
        self.R = R
        n = len(R.W)
        self.ranks = np.empty(n, dtype=np.int64)
        self.in_s = np.zeros(n, dtype=np.bool_)
        self.len = 0
        self.members: list[int] = []

    def value(self, b):
        return K.walk_value(self.ranks, self.len, self.R.W, self.R.P, float(b))

    def value_with(self, x, b):
        R = self.R
        return K.merged_value(self.ranks, self.len, R.ranks, R.ptr[x], R.ptr[x + 1],
                              self.in_s, R.W, R.P, float(b))

    def gain(self, x, b):
        return max(self.value_with(x, b) - self.value(b), 0.0)

    def add(self, x):
        R = self.R
        self.len = K.add_to_set(self.ranks, self.len, R.ranks, R.ptr[x], R.ptr[x + 1],
                                self.in_s)
        self.members.append(int(x))


def neighborhood_items(inst: BipartiteInstance, S) -> SortedItemList:
    """``N(S)`` as a sorted item list; ids are neighbor node ids."""
    nb = inst.neighborhood(S)
    return SortedItemList.from_items(inst.neighbors[nb], inst.weight[nb], inst.prob[nb])


def objective(inst: BipartiteInstance, S, b) -> float:
    """``O(N(S), b)``."""
    return solve(neighborhood_items(inst, S), b)


def second_stage(inst: BipartiteInstance, S, b) -> np.ndarray:
    """Optimal allocation ``q`` (length n) of budget ``b`` over ``N(S)``."""
    nb = inst.neighborhood(S)
    q = np.zeros(inst.n)
    if len(nb):
        o = np.lexsort((inst.neighbors[nb], -inst.weight[nb]))
        T = SortedItemList._sorted(inst.neighbors[nb][o], inst.weight[nb][o],
                                   inst.prob[nb][o])
        q[nb[o]] = allocation(T, b)
    return q


def make_solution(inst, S, k, algo, split_values=None, **diag) -> SeedingSolution:
    S = np.array(sorted(int(v) for v in S), dtype=np.int64)
    t = k - len(S)
    q = second_stage(inst, S, t)
    value = float(np.sum(inst.prob * q * inst.weight))
    diag["algo"] = algo
    return SeedingSolution(S=S, seeds=inst.core[S], t=t, k=k, q=q,
                           non_adaptive_value=value,
                           split_values=split_values or {}, diagnostics=diag)


def _empty(inst, k, algo):
    warnings.warn(f"budget k={k} < 2 leaves no room for both stages; returning empty solution")
    return SeedingSolution(S=np.zeros(0, np.int64), seeds=np.zeros(0, np.int64),
                           t=max(k, 0), k=k, q=np.zeros(inst.n), non_adaptive_value=0.0,
                           diagnostics={"algo": algo})


def _reduce(inst, k, results, algo, **diag):
    """Pick the best split; ties go to the smaller ``t``."""
    best_t, best_S, best_v = None, [], -1.0
    split_values = {}
    for t, S in results:
        v = objective(inst, S, k - len(S))
        split_values[t] = v
        if v > best_v:
            best_t, best_S, best_v = t, S, v
    sol = make_solution(inst, best_S, k, algo, split_values, best_split=best_t, **diag)
    return sol


# ---------------------------------------------------------------------------
# plain and lazy greedy

def greedy_for_split(inst: BipartiteInstance, t: int, first_budget: int,
                     lazy: bool = False, _ranked: _Ranked | None = None):
    """Greedy first-stage set for second-stage budget ``t``.

    Returns ``(S_t, O(N(S_t), t))`` with ``S_t`` as a list of core
    positions in pick order.  Stops early once every marginal is zero.
    """
    R = _ranked or _Ranked(inst)
    if lazy:
        S = _lazy_greedy(R, t, first_budget)
    else:
        picks, _ = K.greedy_split(R.ptr, R.ranks, R.W, R.P, float(t), int(first_budget))
        S = [int(x) for x in picks]
    return S, objective(inst, S, t)


def _lazy_greedy(R: _Ranked, t, first_budget):
    st = _SetState(R)
    m = len(R.ptr) - 1
    heap = [(-st.gain(x, t), x, 0) for x in range(m)]
    heapq.heapify(heap)
    it = 0
    while heap and len(st.members) < first_budget:
        neg, x, stamp = heapq.heappop(heap)
        if stamp == it:
            if -neg <= 0:
                break
            st.add(x)
            it += 1
        else:
            heapq.heappush(heap, (-st.gain(x, t), x, it))
    return st.members


def run(inst: BipartiteInstance, k: int, strategy: SplitStrategy | None = None,
        workers: int = 1, lazy: bool = False) -> SeedingSolution:
    """Best greedy solution over the splits of ``strategy``.

    Splits run in a thread pool of ``workers`` threads (the compiled kernel
    releases the GIL); the result does not depend on ``workers``.
    """
    strategy = strategy or SplitStrategy()
    algo = "greedy" if strategy.mode == "all" else "greedy-geo"
    if k < 2:
        return _empty(inst, k, algo)
    R = _Ranked(inst)
    splits = strategy.splits(k)

    def one(t):
        S, _ = greedy_for_split(inst, t, k - t, lazy=lazy, _ranked=R)
        return t, S

    if workers > 1 and len(splits) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(one, splits))
    else:
        results = [one(t) for t in splits]
    return _reduce(inst, k, results, algo, splits=len(splits))


# ---------------------------------------------------------------------------
# Sample & Prune

def _threshold_levels(first_budget: int, epsilon: float) -> int:
    # thresholds go from the max singleton value d down to eps * d / first_budget
    return max(1, math.ceil(math.log(first_budget / epsilon) / math.log1p(epsilon)))


def sample_and_prune_split(inst, t, first_budget, epsilon, ell, rng, _ranked=None):
    """Threshold greedy with sampled candidate batches for one split.

    Returns ``(S_t, rounds, max_sample)`` where ``rounds`` counts prune
    passes over the surviving universe (one map-reduce round each).
    """
    R = _ranked or _Ranked(inst)
    m = len(R.ptr) - 1
    st = _SetState(R)
    delta = max((st.gain(x, t) for x in range(m)), default=0.0)
    rounds = 0
    max_sample = 0
    if delta <= 0:
        return [], rounds, max_sample
    for i in range(1, _threshold_levels(first_budget, epsilon) + 1):
        tau = delta / (1 + epsilon) ** i
        chosen = set(st.members)
        U = np.array([x for x in range(m) if x not in chosen], dtype=np.int64)
        while len(U) and len(st.members) < first_budget:
            size = min(ell, len(U))
            sample = rng.choice(U, size=size, replace=False)
            max_sample = max(max_sample, size)
            for x in sample:
                if len(st.members) >= first_budget:
                    break
                if st.gain(x, t) >= tau:
                    st.add(x)
            chosen = set(st.members)
            U = np.array([x for x in U if x not in chosen and st.gain(x, t) >= tau],
                         dtype=np.int64)
            rounds += 1
        if len(st.members) >= first_budget:
            break
    return list(st.members), rounds, max_sample


def run_sample_and_prune(inst: BipartiteInstance, k: int, epsilon: float = 0.1,
                         ell: int = 16, seed=0,
                         strategy: SplitStrategy | None = None) -> SeedingSolution:
    """Sample&Prune variant of :func:`run`, executed as in-process rounds."""
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if ell < 1:
        raise ValueError("sample size must be at least 1")
    if k < 2:
        return _empty(inst, k, "snp")
    strategy = strategy or SplitStrategy()
    R = _Ranked(inst)
    results, rounds, max_sample = [], 0, 0
    for t in strategy.splits(k):
        rng = np.random.default_rng([seed, t])
        S, r, ms = sample_and_prune_split(inst, t, k - t, epsilon, ell, rng, _ranked=R)
        results.append((t, S))
        rounds += r
        max_sample = max(max_sample, ms)
    return _reduce(inst, k, results, "snp", rounds=rounds, max_sample=max_sample,
                   splits=len(results))


# ---------------------------------------------------------------------------
# sampled-objective greedy (SAA baseline)

def run_saa(inst: BipartiteInstance, k: int, samples: int, seed=0,
            strategy: SplitStrategy | None = None) -> SeedingSolution:
    """Same greedy, but ``O(N(S), t)`` is replaced by a sampled estimate of
    ``F(p ⊗ q)`` with ``q`` the knapsack allocation over ``N(S)``."""
    from .evaluation import estimate_F_sampling

    if k < 2:
        return _empty(inst, k, "saa-greedy")
    strategy = strategy or SplitStrategy()
    m = inst.m
    ss = np.random.SeedSequence(seed)

    def f_hat(S, t):
        if not S:
            return 0.0
        nb = inst.neighborhood(S)
        q = second_stage(inst, S, t)
        return estimate_F_sampling(inst, q, samples, ss.spawn(1)[0], support=nb)

    results = []
    for t in strategy.splits(k):
        S: list[int] = []
        base = 0.0
        while len(S) < k - t:
            best, best_val = -1, base
            for x in range(m):
                if x in S:
                    continue
                v = f_hat(S + [x], t)
                if v > best_val:
                    best, best_val = x, v
            if best < 0:
                break
            S.append(best)
            base = f_hat(S, t)
        results.append((t, S))
    return _reduce(inst, k, results, "saa-greedy", samples=samples)
