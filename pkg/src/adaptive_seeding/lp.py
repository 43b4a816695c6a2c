"""LP relaxation of the non-adaptive problem and pipage rounding.

Variables are ``lambda_v`` for core nodes and ``q_u`` for neighbors::

    max  sum_u p_u w_u q_u
    s.t. sum_v lambda_v + sum_u p_u q_u <= k
         q_u - sum_{v parent of u} lambda_v <= 0
         0 <= lambda, q <= 1
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import TextIO

import numpy as np
import scipy.sparse as sp
from scipy.optimize import linprog

from .graph import BipartiteInstance
from .greedy import SeedingSolution, make_solution, objective

FRACTIONAL_TOL = 1e-9


class LPError(RuntimeError):
    """Solver failure; ``incumbent`` holds the best point known, if any."""

    def __init__(self, msg, incumbent=None):
        super().__init__(msg)
        self.incumbent = incumbent


@dataclass(frozen=True)
class SeedingLP:
    m: int
    n: int
    c: np.ndarray           # objective (maximize), length m + n
    A: sp.csr_matrix        # (1 + n) x (m + n)
    b: np.ndarray           # (1 + n,)

    @property
    def num_vars(self) -> int:
        return self.m + self.n

    @property
    def num_rows(self) -> int:
        return self.A.shape[0]

    def residuals(self, x) -> np.ndarray:
        """Constraint violations (positive means infeasible), bounds included."""
        x = np.asarray(x)
        return np.concatenate([self.A @ x - self.b, -x, x - 1.0])


@dataclass(frozen=True)
class FractionalSolution:
    lam: np.ndarray
    q: np.ndarray
    objective: float

    @property
    def x(self):
        return np.concatenate([self.lam, self.q])


def build_lp(inst: BipartiteInstance, k: float) -> SeedingLP:
    m, n = inst.m, inst.n
    c = np.concatenate([np.zeros(m), inst.prob * inst.weight])
    budget = sp.csr_matrix(np.concatenate([np.ones(m), inst.prob])[None, :])
    # coverage: +1 on q_u, -1 on each parent lambda_v
    owner = np.repeat(np.arange(m), np.diff(inst.inc_indptr))
    cov_lam = sp.csr_matrix((-np.ones(len(owner)), (inst.inc_indices, owner)), shape=(n, m))
    cov = sp.hstack([cov_lam, sp.identity(n, format="csr")])
    A = sp.vstack([budget, cov]).tocsr()
    b = np.concatenate([[float(k)], np.zeros(n)])
    return SeedingLP(m, n, c, A, b)


def solve_lp(lp: SeedingLP, tol: float = 1e-9, max_iter: int = 100_000) -> FractionalSolution:
    """Solve with the HiGHS dual simplex."""
    res = linprog(-lp.c, A_ub=lp.A, b_ub=lp.b, bounds=(0.0, 1.0), method="highs-ds",
                  options={"primal_feasibility_tolerance": tol,
                           "dual_feasibility_tolerance": tol,
                           "maxiter": max_iter})
    if res.status == 1:
        inc = None if res.x is None else _fractional(lp, res.x)
        raise LPError("iteration limit reached", inc)
    if res.status != 0:
        raise LPError(f"LP solver failed: {res.message}")
    return _fractional(lp, res.x)


def _fractional(lp, x):
    x = np.clip(np.asarray(x, dtype=np.float64), 0.0, 1.0)
    return FractionalSolution(x[:lp.m], x[lp.m:], float(lp.c @ x))


def write_lp(lp: SeedingLP, stream: TextIO) -> None:
    """Plain-text sparse dump.

    Header ``#seeding-lp v1 rows=R cols=C sense=max``, then ``obj j value``
    for objective entries, ``i j value`` for constraint entries and
    ``rhs i value`` for right-hand sides.  All rows are ``<=``; all
    variables are bounded to [0, 1].
    """
    stream.write(f"#seeding-lp v1 rows={lp.num_rows} cols={lp.num_vars} sense=max\n")
    for j in np.flatnonzero(lp.c):
        stream.write(f"obj {j} {float(lp.c[j])!r}\n")
    coo = lp.A.tocoo()
    for i, j, v in zip(coo.row, coo.col, coo.data):
        stream.write(f"{i} {j} {float(v)!r}\n")
    for i, v in enumerate(lp.b):
        stream.write(f"rhs {i} {float(v)!r}\n")


def read_lp(stream: TextIO) -> SeedingLP:
    head = stream.readline().split()
    if not head or head[0] != "#seeding-lp":
        raise ValueError("not a seeding-lp dump")
    kv = dict(h.split("=") for h in head[2:])
    R, C = int(kv["rows"]), int(kv["cols"])
    c = np.zeros(C)
    b = np.zeros(R)
    rows, cols, vals = [], [], []
    for line in stream:
        a, j, v = line.split()
        if a == "obj":
            c[int(j)] = float(v)
        elif a == "rhs":
            b[int(j)] = float(v)
        else:
            rows.append(int(a)); cols.append(int(j)); vals.append(float(v))
    A = sp.csr_matrix((vals, (rows, cols)), shape=(R, C))
    m = C - (R - 1)
    return SeedingLP(m, R - 1, c, A, b)


# ---------------------------------------------------------------------------
# pipage rounding

def coverage_surrogate(inst: BipartiteInstance, lam, cover_weight) -> float:
    """``sum_u c_u (1 - prod_{v parent of u} (1 - lambda_v))``."""
    lam = np.asarray(lam, dtype=np.float64)
    miss = np.ones(inst.n)
    np.multiply.at(miss, inst.inc_indices,
                   np.repeat(1.0 - lam, np.diff(inst.inc_indptr)))
    return float(cover_weight @ (1.0 - miss))


def pipage_vector(inst: BipartiteInstance, lam, cover_weight, tol=FRACTIONAL_TOL):
    """Pipage-round ``lam`` until at most one entry is fractional.

    Each step takes the two lowest-indexed fractional entries and moves
    mass between them (keeping their sum) to whichever endpoint does not
    decrease the coverage surrogate; ties favor raising the lower index.
    """
    lam = np.clip(np.asarray(lam, dtype=np.float64).copy(), 0.0, 1.0)
    lam[lam < tol] = 0.0
    lam[lam > 1 - tol] = 1.0
    steps = 0
    while True:
        frac = np.flatnonzero((lam > 0) & (lam < 1))
        if len(frac) < 2:
            return lam, steps
        i, j = frac[0], frac[1]
        up = lam.copy()
        d = min(1 - lam[i], lam[j])
        up[i] += d
        up[j] -= d
        down = lam.copy()
        d = min(lam[i], 1 - lam[j])
        down[i] -= d
        down[j] += d
        lam = up if coverage_surrogate(inst, up, cover_weight) >= \
            coverage_surrogate(inst, down, cover_weight) else down
        lam[lam < tol] = 0.0
        lam[lam > 1 - tol] = 1.0
        steps += 1


def pipage_round(inst: BipartiteInstance, frac: FractionalSolution, k: int) -> SeedingSolution:
    """Integral first-stage set from an LP solution.

    Neighbors with ``q_u = 0`` are dropped, the remaining ones weigh
    ``p_u q_u w_u`` in a weighted coverage instance, and ``lambda`` is pipage
    rounded.  The last fractional entry is tried both ways (first-stage size
    ``floor`` or ``ceil`` of ``sum lambda``) and the second stage is re-solved
    exactly for each; the better one is returned.
    """
    q = np.where(frac.q > FRACTIONAL_TOL, frac.q, 0.0)
    cover = inst.prob * q * inst.weight
    lam, steps = pipage_vector(inst, frac.lam, cover)
    rest = np.flatnonzero((lam > 0) & (lam < 1))
    candidates = []
    base = [int(v) for v in np.flatnonzero(lam >= 1)]
    if len(rest):
        candidates = [base, sorted(base + [int(rest[0])])]
    else:
        candidates = [base]
    best, best_v = None, -1.0
    for S in candidates:
        if len(S) > k:
            continue
        v = objective(inst, S, k - len(S))
        if v > best_v:
            best, best_v = S, v
    return make_solution(inst, best, k, "lp", pipage_steps=steps,
                         lp_objective=frac.objective)


def run_lp(inst: BipartiteInstance, k: int, tol: float = 1e-9) -> SeedingSolution:
    """Build, solve and round in one call."""
    frac = solve_lp(build_lp(inst, k), tol)
    return pipage_round(inst, frac, k)
