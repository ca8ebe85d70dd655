"""Exhaustive oracles on small undirected graphs (subset dynamic programming)."""

from __future__ import annotations

import numpy as np

from ..codec import BudgetExceeded
from ..sigraph import UndirectedSIGraph

BRUTE_MAX_VERTICES = 15


def _masks(g: UndirectedSIGraph, limit: int) -> list[int]:
    if len(g) > limit:
        raise BudgetExceeded(f"exhaustive search limited to {limit} vertices, got {len(g)}")
    pos = {v: i for i, v in enumerate(g.vertices)}
    return [sum(1 << pos[u] for u in g.adj[v]) for v in g.vertices]


def _popcounts(size: int) -> np.ndarray:
    idx = np.arange(size, dtype=np.int64)
    pc = np.zeros(size, dtype=np.int64)
    while idx.any():
        pc += idx & 1
        idx >>= 1
    return pc


def clique_counts(nbr: list[int]) -> np.ndarray:
    """``out[X]`` = number of cliques (empty one included) inside vertex set X."""
    n = len(nbr)
    out = np.ones(1, dtype=np.int64)
    for v in range(n):
        low = np.arange(1 << v, dtype=np.int64)
        out = np.concatenate([out, out + out[low & nbr[v]]])
    return out


def brute_clique_cover(g: UndirectedSIGraph, limit: int = BRUTE_MAX_VERTICES) -> int:
    """Minimum number of cliques covering ``g`` (chromatic number of the complement).

    Uses inclusion-exclusion: V is covered by r cliques iff
    sum over X of (-1)^|V \\ X| * cliques(X)^r is positive.
    """
    nbr = _masks(g, limit)
    n = len(nbr)
    if n == 0:
        return 0
    counts = clique_counts(nbr).astype(object)
    sign = np.where((n - _popcounts(1 << n)) % 2 == 0, 1, -1).astype(object)
    power = sign.copy()
    for r in range(1, n + 1):
        power = power * counts
        if power.sum() > 0:
            return r
    raise AssertionError("singletons always cover the graph")


def independence_number(g: UndirectedSIGraph, limit: int = 20) -> int:
    nbr = _masks(g, limit)
    indep = np.ones(1, dtype=bool)
    for v in range(len(nbr)):
        low = np.arange(1 << v, dtype=np.int64)
        indep = np.concatenate([indep, indep & ((low & nbr[v]) == 0)])
    return int(_popcounts(len(indep))[indep].max())


def clique_number(g: UndirectedSIGraph, limit: int = 20) -> int:
    return independence_number(g.complement(), limit)
