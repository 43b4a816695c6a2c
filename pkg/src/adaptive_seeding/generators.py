"""Synthetic topologies: preferential attachment, small world, Kronecker
powers and the configuration model.  All generators are deterministic
functions of their parameters and seed."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .graph import Graph

KRONECKER_NODE_CAP = 1 << 20
KRONECKER_EDGE_CAP = 50_000_000


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def build(self) -> Graph:
        p = dict(self.params)
        if self.kind == "barabasi_albert":
            return barabasi_albert(p["n"], p.get("m0", p.get("attach")), p["attach"], self.seed)
        if self.kind == "watts_strogatz":
            return watts_strogatz(p["n"], p["ring_degree"], p["beta"], self.seed)
        if self.kind == "kronecker":
            return kronecker(star_graph(p.get("star_leaves", 3)), p["power"])
        if self.kind == "configuration":
            seq = powerlaw_degree_sequence(p["n"], p.get("exponent", 2.5),
                                           p.get("min_degree", 10), seed=self.seed)
            return configuration_model(seq, self.seed)
        raise ValueError(f"unknown generator kind {self.kind!r}")


def complete_graph(n: int) -> Graph:
    iu = np.triu_indices(n, 1)
    return Graph.from_edges(n, np.column_stack(iu))


def star_graph(leaves: int) -> Graph:
    """Star with center 0 and ``leaves`` leaves."""
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def barabasi_albert(n: int, m0: int, attach: int, seed=0) -> Graph:
    """Preferential attachment grown from a complete graph on ``m0`` nodes.

    Each arriving node links to ``attach`` distinct existing nodes chosen
    with probability proportional to their current degree.
    """
    if not (n >= m0 >= attach >= 1):
        raise ValueError("need n >= m0 >= attach >= 1")
    if m0 == 1 and n > 1:
        raise ValueError("a single seed node has degree 0; use m0 >= 2")
    rng = np.random.default_rng(seed)
    seed_edges = np.column_stack(np.triu_indices(m0, 1))
    n_new = n - m0
    # every endpoint occurrence, so a uniform draw is degree-proportional
    ends = np.empty(2 * (len(seed_edges) + n_new * attach), dtype=np.int64)
    ends[:2 * len(seed_edges)] = seed_edges.ravel()
    top = 2 * len(seed_edges)
    edges = np.empty((n_new * attach, 2), dtype=np.int64)
    e = 0
    for v in range(m0, n):
        targets = set()
        while len(targets) < attach:
            for r in rng.integers(0, top, size=2 * (attach - len(targets))):
                targets.add(int(ends[r]))
                if len(targets) == attach:
                    break
        for u in sorted(targets):
            edges[e] = (v, u)
            ends[top] = v
            ends[top + 1] = u
            top += 2
            e += 1
    return Graph.from_edges(n, np.concatenate([seed_edges, edges]))


def watts_strogatz(n: int, ring_degree: int, beta: float, seed=0) -> Graph:
    """Ring lattice with ``ring_degree / 2`` neighbors per side, each edge
    rewired with probability ``beta`` to a uniform non-duplicate endpoint."""
    if ring_degree % 2 or ring_degree < 2 or ring_degree >= n:
        raise ValueError("ring_degree must be even, >= 2 and < n")
    if not 0 <= beta <= 1:
        raise ValueError("beta must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    adj = [set() for _ in range(n)]
    half = ring_degree // 2
    for j in range(1, half + 1):
        for u in range(n):
            v = (u + j) % n
            adj[u].add(v)
            adj[v].add(u)
    for j in range(1, half + 1):
        flips = rng.random(n) < beta
        for u in np.flatnonzero(flips):
            v = (u + j) % n
            if v not in adj[u] or len(adj[u]) >= n - 1:
                continue
            w = int(rng.integers(n))
            while w == u or w in adj[u]:
                w = int(rng.integers(n))
            adj[u].discard(v)
            adj[v].discard(u)
            adj[u].add(w)
            adj[w].add(u)
    edges = [(u, v) for u in range(n) for v in adj[u] if u < v]
    return Graph.from_edges(n, edges)


def kronecker_edge_count(initiator: Graph, power: int) -> int:
    """Edge count of :func:`kronecker` without building the graph."""
    nnz = 2 * initiator.edge_count + initiator.node_count  # with self-loops
    return (nnz ** power - initiator.node_count ** power) // 2


def kronecker(initiator: Graph, power: int, node_cap: int = KRONECKER_NODE_CAP,
              edge_cap: int = KRONECKER_EDGE_CAP) -> Graph:
    """Deterministic Kronecker power of ``A + I`` (self-loops dropped after)."""
    if power < 1:
        raise ValueError("power must be >= 1")
    n0 = initiator.node_count
    if n0 > 8:
        raise ValueError("initiator should have at most 8 nodes")
    if n0 ** power > node_cap:
        raise ValueError(f"{n0}^{power} nodes exceeds the cap of {node_cap}")
    if kronecker_edge_count(initiator, power) > edge_cap:
        raise ValueError(f"{kronecker_edge_count(initiator, power)} edges exceeds "
                         f"the cap of {edge_cap}")
    A = (initiator.to_scipy() + sp.identity(n0, format="csr")).tocsr()
    P = A
    for _ in range(power - 1):
        P = sp.kron(P, A, format="csr")
    P = sp.triu(P, k=1).tocoo()
    return Graph.from_edges(n0 ** power, np.column_stack([P.row, P.col]))


def powerlaw_degree_sequence(n: int, exponent: float = 2.5, min_degree: int = 10,
                             max_degree: int | None = None, seed=0) -> np.ndarray:
    """Discrete power-law degrees with an even sum."""
    rng = np.random.default_rng(seed)
    max_degree = max_degree or n - 1
    a1 = 1.0 - exponent
    u = rng.random(n)
    lo, hi = float(min_degree), float(max_degree) + 1.0
    x = (lo ** a1 + u * (hi ** a1 - lo ** a1)) ** (1.0 / a1)
    d = np.minimum(np.floor(x).astype(np.int64), max_degree)
    if d.sum() % 2:
        d[int(np.argmin(d))] += 1
    return d


def configuration_model(degree_sequence, seed=0, return_discarded: bool = False):
    """Random stub matching; self-loops and repeated edges are discarded.

    With ``return_discarded`` the number of discarded stubs is returned as
    well; the realized degrees then fall short of the target by that much.
    """
    d = np.asarray(degree_sequence, dtype=np.int64)
    if np.any(d < 0):
        raise ValueError("degrees must be non-negative")
    if d.sum() % 2:
        raise ValueError("degree sum must be even")
    n = len(d)
    if n and d.max() >= n:
        raise ValueError("max degree must be < number of nodes")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), d)
    rng.shuffle(stubs)
    pairs = stubs.reshape(-1, 2)
    g = Graph.from_edges(n, pairs)
    discarded = int(d.sum() - 2 * g.edge_count)
    return (g, discarded) if return_discarded else g
