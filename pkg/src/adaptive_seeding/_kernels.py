"""Compiled inner loops for the budget-split greedy.

Everything here works in *rank space*: neighbor ``u`` is identified by its
position in the global (weight desc, id asc) order, so every sorted list is
an ascending integer array and a merge is a plain two-pointer walk.
"""
import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def walk_value(s_ranks, s_len, W, P, budget):
    """Fractional knapsack value of the first ``s_len`` ranks at ``budget``."""
    value = 0.0
    left = budget
    i = 0
    while left > 0.0 and i < s_len:
        r = s_ranks[i]
        i += 1
        p = P[r]
        if p >= left:
            value += left * W[r]
            left = 0.0
        else:
            value += p * W[r]
            left -= p
    return value


@njit(cache=True, nogil=True)
def merged_value(s_ranks, s_len, x_ranks, lo, hi, in_s, W, P, budget):
    """Knapsack value of ``N(S) ∪ x_ranks[lo:hi]``; members of ``N(S)`` are
    flagged in ``in_s`` and skipped on the ``x`` side."""
    value = 0.0
    left = budget
    i = 0
    j = lo
    while left > 0.0:
        while j < hi and in_s[x_ranks[j]]:
            j += 1
        if i < s_len and (j >= hi or s_ranks[i] < x_ranks[j]):
            r = s_ranks[i]
            i += 1
        elif j < hi:
            r = x_ranks[j]
            j += 1
        else:
            break
        p = P[r]
        if p >= left:
            value += left * W[r]
            left = 0.0
        else:
            value += p * W[r]
            left -= p
    return value


@njit(cache=True, nogil=True)
def add_to_set(s_ranks, s_len, x_ranks, lo, hi, in_s):
    """Merge the new ranks of ``x`` into the sorted prefix ``s_ranks[:s_len]``
    (in place, ``s_ranks`` has capacity ``n``).  Returns the new length."""
    new = 0
    for j in range(lo, hi):
        if not in_s[x_ranks[j]]:
            new += 1
    if new == 0:
        return s_len
    # merge from the back
    i = s_len - 1
    j = hi - 1
    out = s_len + new - 1
    while j >= lo:
        r = x_ranks[j]
        if in_s[r]:
            j -= 1
            continue
        if i >= 0 and s_ranks[i] > r:
            s_ranks[out] = s_ranks[i]
            i -= 1
        else:
            s_ranks[out] = r
            j -= 1
        out -= 1
    for j in range(lo, hi):
        in_s[x_ranks[j]] = True
    return s_len + new


@njit(cache=True, nogil=True)
def greedy_split(core_ptr, core_ranks, W, P, t, first_budget):
    """Plain greedy for one split.  Returns (chosen core positions, count,
    number of marginal evaluations)."""
    m = len(core_ptr) - 1
    n = len(W)
    s_ranks = np.empty(n, dtype=np.int64)
    in_s = np.zeros(n, dtype=np.bool_)
    chosen = np.zeros(m, dtype=np.bool_)
    picks = np.empty(min(first_budget, m), dtype=np.int64)
    s_len = 0
    count = 0
    evals = 0
    base = 0.0
    while count < first_budget and count < m:
        best = -1
        best_gain = 0.0
        for x in range(m):
            if chosen[x]:
                continue
            val = merged_value(s_ranks, s_len, core_ranks, core_ptr[x],
                               core_ptr[x + 1], in_s, W, P, t)
            evals += 1
            gain = val - base
            if gain > best_gain:
                best_gain = gain
                best = x
        if best < 0:
            break
        chosen[best] = True
        picks[count] = best
        count += 1
        s_len = add_to_set(s_ranks, s_len, core_ranks, core_ptr[best],
                           core_ptr[best + 1], in_s)
        base = walk_value(s_ranks, s_len, W, P, t)
    return picks[:count], evals


@njit(cache=True, nogil=True)
def saa_fill(p_eff, w, draws):
    """Row sums of ``w`` over entries where ``draws < p_eff``."""
    total = 0.0
    for s in range(draws.shape[0]):
        for u in range(draws.shape[1]):
            if draws[s, u] < p_eff[u]:
                total += w[u]
    return total
