"""Linear influence weights, second-stage probabilities, realizations.

Two weight models are provided: the degree proxy and the ``t``-step voter
model, whose influence function is additive with weights given by
``w(t) = (M^T)^t 1`` for the random-walk matrix ``M``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.optimize import brentq

from .graph import BipartiteInstance, Graph

FAMILIES = ("uniform", "beta", "normal", "power_law", "inverse_degree")


@dataclass(frozen=True)
class InfluenceWeights:
    w: np.ndarray
    model: str      # "degree" or "voter(t)"

    def __len__(self):
        return len(self.w)


def degree_weights(g: Graph) -> InfluenceWeights:
    return InfluenceWeights(g.degrees.astype(np.float64), "degree")


def transition_matrix(g: Graph) -> sp.csr_matrix:
    """Row-stochastic random-walk matrix; isolated nodes keep a self-loop."""
    deg = g.degrees.astype(np.float64)
    M = g.to_scipy()
    inv = np.divide(1.0, deg, out=np.zeros_like(deg), where=deg > 0)
    M = sp.diags(inv) @ M
    iso = np.flatnonzero(deg == 0)
    if len(iso):
        M = M + sp.csr_matrix((np.ones(len(iso)), (iso, iso)), shape=M.shape)
    return M.tocsr()


def voter_weights(g: Graph, t: int, return_path: bool = False):
    """Voter-model influence weights after ``t`` steps.

    ``w_u(t)`` is the expected number of nodes holding ``u``'s initial
    opinion after ``t`` steps.  Computed with ``t`` sparse products; with
    ``return_path`` the whole sequence ``w(0..t)`` is returned as well.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    MT = transition_matrix(g).T.tocsr()
    w = np.ones(g.node_count)
    path = [w]
    for _ in range(t):
        w = MT @ w
        if return_path:
            path.append(w)
    out = InfluenceWeights(w, f"voter({t})")
    return (out, np.array(path)) if return_path else out


# ---------------------------------------------------------------------------
# second-stage probabilities

@dataclass(frozen=True)
class ProbabilityModel:
    family: str = "uniform"
    mean: float = 1.0
    seed: int = 0
    beta: float = 5.0
    sigma: float = 0.01
    exponent: float = 2.5
    xmin: float = 0.01     # lower end of the power-law support before rescaling

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown probability family {self.family!r}")
        if not 0 <= self.mean <= 1:
            raise ValueError("mean probability must lie in [0, 1]")
        if self.family == "beta" and not 0 < self.mean < 1:
            raise ValueError("beta family needs 0 < mean < 1")
        if self.family in ("inverse_degree", "power_law") and self.mean <= 0:
            raise ValueError(f"{self.family} family needs mean > 0")


def _calibrate_scale(base: np.ndarray, mean: float) -> float:
    """``c`` such that ``mean(clip(c * base, 0, 1)) == mean``."""
    if mean >= 1:
        return np.inf
    f = lambda c: np.minimum(c * base, 1.0).mean() - mean
    hi = 1.0
    while f(hi) < 0:
        hi *= 2
    return brentq(f, 0.0, hi, xtol=1e-14, rtol=1e-14)


def sample_probabilities(model: ProbabilityModel, n: int, degree=None) -> np.ndarray:
    rng = np.random.default_rng(model.seed)
    pbar = model.mean
    if model.family == "uniform":
        return np.full(n, pbar)
    if model.family == "beta":
        alpha = beta_alpha(pbar, model.beta)
        return rng.beta(alpha, model.beta, size=n)
    if model.family == "normal":
        return np.clip(rng.normal(pbar, model.sigma, size=n), 0.0, 1.0)
    if model.family == "power_law":
        # inverse-CDF draw from density ~ x^-a on [xmin, 1]
        a1 = 1.0 - model.exponent
        u = rng.random(n)
        x = (model.xmin ** a1 + u * (1.0 - model.xmin ** a1)) ** (1.0 / a1)
        base = x
    else:  # inverse_degree
        if degree is None:
            raise ValueError("inverse_degree needs node degrees")
        degree = np.asarray(degree, dtype=np.float64)
        if np.any(degree <= 0):
            raise ValueError("inverse_degree needs positive degrees")
        base = 1.0 / degree
    if pbar >= 1:
        return np.ones(n)
    return np.minimum(_calibrate_scale(base, pbar) * base, 1.0)


def beta_alpha(mean: float, beta: float = 5.0) -> float:
    """``alpha`` giving a Beta(alpha, beta) distribution with the given mean."""
    return beta * mean / (1.0 - mean)


def assign_probabilities(inst: BipartiteInstance, model: ProbabilityModel) -> BipartiteInstance:
    """Copy of ``inst`` with second-stage probabilities drawn from ``model``."""
    p = sample_probabilities(model, inst.n, inst.degree)
    return inst.with_probabilities(p)


def assign_weights(inst: BipartiteInstance, weights: InfluenceWeights) -> BipartiteInstance:
    """Copy of ``inst`` with neighbor weights taken from a graph-wide vector."""
    return inst.with_weights(np.asarray(weights.w)[inst.neighbors])


# ---------------------------------------------------------------------------
# realizations

def sample_realization(inst: BipartiteInstance, S, seed) -> np.ndarray:
    """Local indices of ``N(S)`` that realize, each independently w.p. ``p_u``."""
    nb = inst.neighborhood(S)
    rng = np.random.default_rng(seed)
    return nb[rng.random(len(nb)) < inst.prob[nb]]


def select_feasible(R, q, b, seed, weight=None, ids=None) -> np.ndarray:
    """Budget-feasible subset of a realized set.

    Each ``u`` in ``R`` is kept with probability ``q[u]``; if more than
    ``floor(b)`` survive, only the ``floor(b)`` heaviest are returned
    (ties by ascending id).  ``q``, ``weight`` and ``ids`` are indexed by
    the entries of ``R``.
    """
    R = np.asarray(R, dtype=np.int64)
    cap = int(np.floor(b + 1e-12)) if b > 0 else 0
    rng = np.random.default_rng(seed)
    I = R[rng.random(len(R)) < np.asarray(q)[R]]
    if len(I) > cap:
        w = np.zeros(len(I)) if weight is None else np.asarray(weight)[I]
        key = I if ids is None else np.asarray(ids)[I]
        I = I[np.lexsort((key, -w))[:cap]]
    assert len(I) <= cap
    return I
