"""Undirected graphs in CSR form, edge-list ingestion and two-stage instances.

A :class:`Graph` is a simple undirected graph stored as compressed adjacency
arrays.  A :class:`BipartiteInstance` is the input of the adaptive seeding
problem: a core set ``X``, its neighborhood ``N(X)``, and per-neighbor
influence weights and realization probabilities.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Iterable, TextIO

import numpy as np

INSTANCE_HEADER = "#adaptive-seed-instance v1"


class EdgeListError(ValueError):
    """Raised when an edge list cannot be parsed."""


def _frozen(a, dtype):
    a = np.ascontiguousarray(a, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph in CSR form.

    ``indices[indptr[u]:indptr[u + 1]]`` are the neighbors of ``u`` sorted
    ascending.  ``labels[u]`` is the original id of compact node ``u``.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: np.ndarray = None

    def __post_init__(self):
        object.__setattr__(self, "indptr", _frozen(self.indptr, np.int64))
        object.__setattr__(self, "indices", _frozen(self.indices, np.int64))
        labels = self.labels
        if labels is None:
            labels = np.arange(self.node_count)
        object.__setattr__(self, "labels", _frozen(labels, np.int64))

    @classmethod
    def from_edges(cls, n: int, edges, labels=None) -> "Graph":
        """Build a graph on nodes ``0..n-1`` from an ``(E, 2)`` array.

        Self-loops and duplicate edges (in either orientation) are dropped.
        """
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if e.size and (e.min() < 0 or e.max() >= n):
            raise ValueError("edge endpoint out of range")
        e = e[e[:, 0] != e[:, 1]]
        both = np.concatenate([e, e[:, ::-1]])
        if both.size:
            key = np.unique(both[:, 0] * n + both[:, 1])
            src, dst = key // n, key % n
        else:
            src = dst = np.zeros(0, dtype=np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        return cls(np.cumsum(indptr), dst, labels)

    @property
    def node_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, u: int) -> int:
        return int(self.indptr[u + 1] - self.indptr[u])

    def neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def edges(self) -> np.ndarray:
        """Each undirected edge once, as ``(u, v)`` with ``u < v``."""
        src = np.repeat(np.arange(self.node_count), self.degrees)
        keep = src < self.indices
        return np.column_stack([src[keep], self.indices[keep]])

    def to_scipy(self):
        import scipy.sparse as sp

        n = self.node_count
        data = np.ones(len(self.indices))
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(n, n))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices)
                and np.array_equal(self.labels, other.labels))

    def __repr__(self):
        return f"Graph(nodes={self.node_count}, edges={self.edge_count})"


def load_edge_list(stream: TextIO | str) -> Graph:
    """Parse a SNAP-style edge list.

    Lines starting with ``#`` and blank lines are skipped; every other line
    must start with two integer tokens.  Node ids are compacted to
    ``0..n-1`` in ascending order of the original ids, which are kept in
    ``Graph.labels``.
    """
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    pairs = []
    for lineno, line in enumerate(stream, 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        tok = s.split()
        if len(tok) < 2:
            raise EdgeListError(f"line {lineno}: expected two node ids, got {s!r}")
        try:
            pairs.append((int(tok[0]), int(tok[1])))
        except ValueError:
            raise EdgeListError(f"line {lineno}: non-integer node id in {s!r}") from None
    if not pairs:
        raise EdgeListError("empty edge list")
    raw = np.array(pairs, dtype=np.int64)
    labels, compact = np.unique(raw, return_inverse=True)
    return Graph.from_edges(len(labels), compact.reshape(-1, 2), labels)


def read_edge_list(path) -> Graph:
    with open(path) as f:
        return load_edge_list(f)


def write_edge_list(g: Graph, stream: TextIO, original_ids: bool = True) -> None:
    """Write each edge once; ``load_edge_list`` of the output reproduces ``g``.

    Isolated nodes cannot be represented in an edge list and are lost.
    """
    e = g.edges()
    if original_ids:
        e = g.labels[e]
    stream.write(f"# nodes {g.node_count} edges {g.edge_count}\n")
    np.savetxt(stream, e, fmt="%d", delimiter="\t")


def write_id_map(g: Graph, stream: TextIO) -> None:
    stream.write("# compact_id\toriginal_id\n")
    np.savetxt(stream, np.column_stack([np.arange(g.node_count), g.labels]),
               fmt="%d", delimiter="\t")


# ---------------------------------------------------------------------------
# Two-stage instances


@dataclass(frozen=True, eq=False)
class BipartiteInstance:
    """Core set, its neighborhood and the per-neighbor weights/probabilities.

    Neighbors are stored in ascending node-id order and addressed by their
    local index ``0..n-1``.  ``order`` ranks neighbors by non-increasing
    weight (ties by ascending id); ``rank[u]`` is the position of ``u`` in
    that order.  Each per-core list ``inc_indices[inc_indptr[v]:inc_indptr[v+1]]``
    holds local neighbor indices sorted by rank.
    """

    core: np.ndarray            # (m,) node ids
    neighbors: np.ndarray       # (n,) node ids, ascending
    weight: np.ndarray          # (n,)
    prob: np.ndarray            # (n,)
    inc_indptr: np.ndarray      # (m+1,)
    inc_indices: np.ndarray     # local neighbor indices, rank-sorted per core
    degree: np.ndarray = None   # (n,) graph degree of each neighbor, if known
    core_degree: np.ndarray = None
    order: np.ndarray = field(init=False)
    rank: np.ndarray = field(init=False)
    par_indptr: np.ndarray = field(init=False)
    par_indices: np.ndarray = field(init=False)

    def __post_init__(self):
        core = _frozen(self.core, np.int64)
        nb = _frozen(self.neighbors, np.int64)
        w = _frozen(self.weight, np.float64)
        p = _frozen(self.prob, np.float64)
        n = len(nb)
        if len(w) != n or len(p) != n:
            raise ValueError("weight/prob length must match the neighbor count")
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite and non-negative")
        if np.any(p < 0) or np.any(p > 1):
            raise ValueError("probabilities must lie in [0, 1]")
        if n > 1 and np.any(np.diff(nb) <= 0):
            raise ValueError("neighbor ids must be strictly ascending")
        order = np.lexsort((nb, -w))
        rank = np.empty(n, dtype=np.int64)
        rank[order] = np.arange(n)
        indptr = np.asarray(self.inc_indptr, dtype=np.int64)
        idx = np.asarray(self.inc_indices, dtype=np.int64)
        owner = np.repeat(np.arange(len(core)), np.diff(indptr))
        idx = idx[np.lexsort((rank[idx], owner))]
        # reverse incidence
        srt = np.lexsort((owner, idx))
        pptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(pptr, idx + 1, 1)
        pptr = np.cumsum(pptr)
        if n and np.any(np.diff(pptr) == 0):
            raise ValueError("every neighbor needs at least one core parent")
        object.__setattr__(self, "core", core)
        object.__setattr__(self, "neighbors", nb)
        object.__setattr__(self, "weight", w)
        object.__setattr__(self, "prob", p)
        object.__setattr__(self, "inc_indptr", _frozen(indptr, np.int64))
        object.__setattr__(self, "inc_indices", _frozen(idx, np.int64))
        object.__setattr__(self, "order", _frozen(order, np.int64))
        object.__setattr__(self, "rank", _frozen(rank, np.int64))
        object.__setattr__(self, "par_indptr", _frozen(pptr, np.int64))
        object.__setattr__(self, "par_indices", _frozen(owner[srt], np.int64))
        if self.degree is not None:
            object.__setattr__(self, "degree", _frozen(self.degree, np.int64))
        if self.core_degree is not None:
            object.__setattr__(self, "core_degree", _frozen(self.core_degree, np.int64))

    @property
    def m(self) -> int:
        return len(self.core)

    @property
    def n(self) -> int:
        return len(self.neighbors)

    def core_neighbors(self, v: int) -> np.ndarray:
        """Local neighbor indices of core position ``v``, by rank."""
        return self.inc_indices[self.inc_indptr[v]:self.inc_indptr[v + 1]]

    def parents(self, u: int) -> np.ndarray:
        return self.par_indices[self.par_indptr[u]:self.par_indptr[u + 1]]

    def neighborhood(self, S: Iterable[int]) -> np.ndarray:
        """Sorted local indices of ``N(S)`` for core positions ``S``."""
        S = list(S)
        if not S:
            return np.zeros(0, dtype=np.int64)
        return np.unique(np.concatenate([self.core_neighbors(v) for v in S]))

    def with_probabilities(self, prob) -> "BipartiteInstance":
        return self._replace(prob=prob)

    def with_weights(self, weight) -> "BipartiteInstance":
        return self._replace(weight=weight)

    def _replace(self, **kw) -> "BipartiteInstance":
        args = dict(core=self.core, neighbors=self.neighbors, weight=self.weight,
                    prob=self.prob, inc_indptr=self.inc_indptr,
                    inc_indices=self.inc_indices, degree=self.degree,
                    core_degree=self.core_degree)
        args.update(kw)
        return BipartiteInstance(**args)

    def subsample_core(self, positions) -> "BipartiteInstance":
        """Instance restricted to a subset of core positions and their neighbors."""
        positions = np.sort(np.asarray(positions, dtype=np.int64))
        lists = [self.core_neighbors(v) for v in positions]
        keep = np.unique(np.concatenate(lists)) if lists else np.zeros(0, np.int64)
        remap = np.full(self.n, -1, dtype=np.int64)
        remap[keep] = np.arange(len(keep))
        indptr = np.concatenate([[0], np.cumsum([len(a) for a in lists])])
        idx = remap[np.concatenate(lists)] if lists else np.zeros(0, np.int64)
        return BipartiteInstance(
            core=self.core[positions], neighbors=self.neighbors[keep],
            weight=self.weight[keep], prob=self.prob[keep],
            inc_indptr=indptr, inc_indices=idx,
            degree=None if self.degree is None else self.degree[keep],
            core_degree=None if self.core_degree is None else self.core_degree[positions])

    def __repr__(self):
        return f"BipartiteInstance(m={self.m}, n={self.n})"


def build_instance(g: Graph, core, w=None, p=None,
                   exclude_core_from_neighbors: bool = False) -> BipartiteInstance:
    """Extract the two-stage instance for ``core`` (compact node ids).

    ``w`` and ``p`` are vectors over all nodes of ``g``; they default to the
    node degrees and to 1.  Core members adjacent to other core members are
    part of ``N(core)`` unless ``exclude_core_from_neighbors`` is set; in that
    case core nodes left without any neighbor are kept with an empty list.
    """
    core = np.asarray(sorted(set(int(c) for c in core)), dtype=np.int64)
    if len(core) and (core[0] < 0 or core[-1] >= g.node_count):
        raise ValueError("core node id out of range")
    deg = g.degrees
    w = deg.astype(np.float64) if w is None else np.asarray(w, dtype=np.float64)
    p = np.ones(g.node_count) if p is None else np.asarray(p, dtype=np.float64)
    if len(w) != g.node_count or len(p) != g.node_count:
        raise ValueError("w and p must be defined for every node")
    if np.any(p < 0) or np.any(p > 1):
        raise ValueError("probabilities must lie in [0, 1]")
    lists = [g.neighbors(v) for v in core]
    if exclude_core_from_neighbors:
        lists = [a[~np.isin(a, core)] for a in lists]
    nb = np.unique(np.concatenate(lists)) if lists else np.zeros(0, np.int64)
    local = np.searchsorted(nb, np.concatenate(lists)) if lists else nb
    indptr = np.concatenate([[0], np.cumsum([len(a) for a in lists])]).astype(np.int64)
    return BipartiteInstance(core=core, neighbors=nb, weight=w[nb], prob=p[nb],
                             inc_indptr=indptr, inc_indices=local,
                             degree=deg[nb], core_degree=deg[core])


def random_core(g: Graph, size: int, seed) -> np.ndarray:
    """``size`` distinct non-isolated nodes drawn uniformly."""
    rng = np.random.default_rng(seed)
    pool = np.flatnonzero(g.degrees > 0)
    if size > len(pool):
        raise ValueError("core larger than the number of non-isolated nodes")
    return np.sort(rng.choice(pool, size=size, replace=False))


def dump_instance(inst: BipartiteInstance, stream: TextIO) -> None:
    """One incidence per line: ``core_id  neighbor_id  weight  probability``."""
    stream.write(INSTANCE_HEADER + "\n")
    for v in range(inst.m):
        for u in inst.core_neighbors(v):
            stream.write(f"{inst.core[v]}\t{inst.neighbors[u]}\t"
                         f"{float(inst.weight[u])!r}\t{float(inst.prob[u])!r}\n")


def restore_instance(stream: TextIO) -> BipartiteInstance:
    first = stream.readline().rstrip("\n")
    if first != INSTANCE_HEADER:
        raise ValueError(f"not an instance dump (header {first!r})")
    rows = []
    for lineno, line in enumerate(stream, 2):
        if not line.strip() or line.startswith("#"):
            continue
        tok = line.split("\t")
        if len(tok) != 4:
            raise ValueError(f"line {lineno}: expected 4 tab-separated fields")
        rows.append((int(tok[0]), int(tok[1]), float(tok[2]), float(tok[3])))
    if not rows:
        raise ValueError("instance dump has no incidences")
    c = np.array([r[0] for r in rows], dtype=np.int64)
    u = np.array([r[1] for r in rows], dtype=np.int64)
    w = np.array([r[2] for r in rows])
    p = np.array([r[3] for r in rows])
    core, ci = np.unique(c, return_inverse=True)
    nb, ui = np.unique(u, return_inverse=True)
    weight = np.empty(len(nb))
    prob = np.empty(len(nb))
    weight[ui] = w
    prob[ui] = p
    srt = np.argsort(ci, kind="stable")
    indptr = np.concatenate([[0], np.cumsum(np.bincount(ci, minlength=len(core)))])
    return BipartiteInstance(core=core, neighbors=nb, weight=weight, prob=prob,
                             inc_indptr=indptr, inc_indices=ui[srt])


# ---------------------------------------------------------------------------
# Friendship paradox


@dataclass(frozen=True)
class ParadoxStats:
    mean_degree_core: float
    mean_degree_neighbors: float
    core_cdf: tuple          # (sorted degrees, cumulative fraction)
    neighbor_cdf: tuple

    @property
    def ratio(self) -> float:
        return self.mean_degree_neighbors / self.mean_degree_core


def _ecdf(x):
    x = np.sort(np.asarray(x, dtype=np.float64))
    return x, np.arange(1, len(x) + 1) / len(x)


def paradox_stats(g: Graph, core) -> ParadoxStats:
    """Mean degree of the core set versus its (deduplicated) neighborhood."""
    core = np.unique(np.asarray(list(core), dtype=np.int64))
    if len(core) == 0:
        raise ValueError("core must be non-empty")
    inst = build_instance(g, core)
    dc = g.degrees[core]
    dn = g.degrees[inst.neighbors]
    return ParadoxStats(float(dc.mean()), float(dn.mean()) if len(dn) else 0.0,
                        _ecdf(dc), _ecdf(dn))
