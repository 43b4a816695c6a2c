"""Fractional knapsack oracle ``O(T, b)``.

``O(T, b)`` is the best value of ``sum p_u q_u w_u`` over ``q in [0,1]^T``
subject to ``sum p_u q_u <= b``.  Filling items by non-increasing weight is
optimal, so the value is piecewise linear and concave in ``b``::

    O(T, b) = sum_{k<i} p_k w_k + (b - sum_{k<i} p_k) w_i

where ``i`` is the first index whose cumulative ``p`` exceeds ``b``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class SortedItemList:
    """Items sorted by non-increasing weight, ties by ascending id."""

    ids: np.ndarray
    w: np.ndarray
    p: np.ndarray
    cum_p: np.ndarray
    cum_pw: np.ndarray

    @classmethod
    def from_items(cls, ids, w, p) -> "SortedItemList":
        ids = np.asarray(ids, dtype=np.int64)
        w = np.asarray(w, dtype=np.float64)
        p = np.asarray(p, dtype=np.float64)
        if not (len(ids) == len(w) == len(p)):
            raise ValueError("ids, w and p must have the same length")
        if len(np.unique(ids)) != len(ids):
            raise ValueError("duplicate item ids")
        if np.any(w < 0) or np.any(p < 0) or np.any(p > 1):
            raise ValueError("need w >= 0 and p in [0, 1]")
        o = np.lexsort((ids, -w))
        return cls._sorted(ids[o], w[o], p[o])

    @classmethod
    def _sorted(cls, ids, w, p) -> "SortedItemList":
        return cls(ids, w, p, np.cumsum(p), np.cumsum(p * w))

    @classmethod
    def empty(cls) -> "SortedItemList":
        z = np.zeros(0)
        return cls._sorted(np.zeros(0, dtype=np.int64), z, z)

    def __len__(self):
        return len(self.ids)

    def is_sorted(self) -> bool:
        if len(self) < 2:
            return True
        dw = np.diff(self.w)
        return bool(np.all((dw < 0) | ((dw == 0) & (np.diff(self.ids) > 0))))

    def union(self, other: "SortedItemList") -> "SortedItemList":
        """Explicit sorted merge; items present in both appear once."""
        ids = np.concatenate([self.ids, other.ids])
        w = np.concatenate([self.w, other.w])
        p = np.concatenate([self.p, other.p])
        _, first = np.unique(ids, return_index=True)
        return SortedItemList.from_items(ids[first], w[first], p[first])


def _check_budget(b):
    if b < 0:
        raise ValueError(f"budget must be non-negative, got {b}")


def solve(T: SortedItemList, b: float) -> float:
    """Value of the fractional knapsack over ``T`` with capacity ``b``."""
    _check_budget(b)
    if len(T) == 0:
        return 0.0
    i = int(np.searchsorted(T.cum_p, b, side="right"))
    if i >= len(T):
        return float(T.cum_pw[-1])
    used_p = T.cum_p[i - 1] if i else 0.0
    used_v = T.cum_pw[i - 1] if i else 0.0
    return float(used_v + (b - used_p) * T.w[i])


def allocation(T: SortedItemList, b: float) -> np.ndarray:
    """Optimal ``q`` (aligned with ``T.ids``) realizing :func:`solve`."""
    _check_budget(b)
    q = np.zeros(len(T))
    i = int(np.searchsorted(T.cum_p, b, side="right"))
    q[:i] = 1.0
    if i < len(T) and T.p[i] > 0:
        used = T.cum_p[i - 1] if i else 0.0
        q[i] = min(1.0, (b - used) / T.p[i])
    return q


def merged_solve(A: SortedItemList, B: SortedItemList, b: float) -> float:
    """``solve(A ∪ B, b)`` computed by merging the two lists on the fly.

    Stops as soon as the capacity is used up, so at most
    ``min(b / p_min, |A| + |B|)`` items are visited.
    """
    _check_budget(b)
    i = j = 0
    na, nb = len(A), len(B)
    value = 0.0
    left = b
    while left > 0 and (i < na or j < nb):
        if j >= nb:
            take_a = True
        elif i >= na:
            take_a = False
        else:
            wa, wb = A.w[i], B.w[j]
            if wa == wb and A.ids[i] == B.ids[j]:
                j += 1  # same item in both lists
                continue
            take_a = wa > wb or (wa == wb and A.ids[i] < B.ids[j])
        if take_a:
            w, p = A.w[i], A.p[i]
            i += 1
        else:
            w, p = B.w[j], B.p[j]
            j += 1
        if p >= left:
            value += left * w
            left = 0.0
        else:
            value += p * w
            left -= p
    return float(value)


def marginal(S_list: SortedItemList, x_list: SortedItemList, b: float) -> float:
    """Gain of adding the items of ``x_list`` to ``S_list`` at capacity ``b``.

    The base value is computed by the same merge walk, so an ``x_list``
    that brings nothing new yields exactly zero.
    """
    gain = merged_solve(S_list, x_list, b) - merged_solve(S_list, SortedItemList.empty(), b)
    return max(gain, 0.0)
