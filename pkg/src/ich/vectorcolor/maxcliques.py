"""Bron-Kerbosch enumeration of maximal cliques on bitmask adjacency."""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from ..category import CategoryGraph, CategoryLabel, build_category_graph
from ..codec import BudgetExceeded
from ..sigraph import UndirectedSIGraph

MAXIMAL_CLIQUE_CAP = 200_000


class EnumerationInfeasible(BudgetExceeded):
    """Maximal-clique enumeration would exceed its cap."""


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def bk_masks(nbr: Sequence[int], cap: int = MAXIMAL_CLIQUE_CAP) -> list[int]:
    """Maximal cliques of the graph with neighbor bitmasks ``nbr``, as bitmasks.

    Tomita pivoting; the output is sorted so the result does not depend on
    the recursion order. Raises ``EnumerationInfeasible`` past ``cap``.
    """
    out: list[int] = []

    def rec(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            if len(out) > cap:
                raise EnumerationInfeasible(f"more than {cap} maximal cliques; enumeration infeasible")
            return
        pivot = max(_bits(p | x), key=lambda u: (nbr[u] & p).bit_count())
        for v in list(_bits(p & ~nbr[pivot])):
            rec(r | (1 << v), p & nbr[v], x & nbr[v])
            p &= ~(1 << v)
            x |= 1 << v

    if nbr:
        rec(0, (1 << len(nbr)) - 1, 0)
    return sorted(out, key=lambda m: (m.bit_count(), [i for i in _bits(m)]))


def graph_masks(g: UndirectedSIGraph) -> list[int]:
    pos = {v: i for i, v in enumerate(g.vertices)}
    return [sum(1 << pos[u] for u in g.adj[v]) for v in g.vertices]


def maximal_cliques_graph(g: UndirectedSIGraph, cap: int = MAXIMAL_CLIQUE_CAP) -> list[tuple[int, ...]]:
    """Maximal cliques of an instance graph as sorted vertex tuples."""
    return [tuple(g.vertices[i] for i in _bits(m)) for m in bk_masks(graph_masks(g), cap)]


@lru_cache(maxsize=None)
def _category_cliques(k: int, cap: int) -> tuple[tuple[int, ...], ...]:
    cg = build_category_graph(k)
    idx = cg.index()
    nbr = [0] * len(cg.vertices)
    for v in cg.vertices:
        for u in cg.neighbors(v):
            nbr[idx[v]] |= 1 << idx[u]
    return tuple(tuple(_bits(m)) for m in bk_masks(nbr, cap))


def maximal_cliques(cg: CategoryGraph | int, cap: int = MAXIMAL_CLIQUE_CAP) -> list[tuple[CategoryLabel, ...]]:
    """Maximal cliques of the unweighted k-skeleton (weights are ignored)."""
    k = cg if isinstance(cg, int) else cg.k
    verts = build_category_graph(k).vertices
    return [tuple(verts[i] for i in c) for c in _category_cliques(k, cap)]


def maximal_clique_indices(k: int, cap: int = MAXIMAL_CLIQUE_CAP) -> tuple[tuple[int, ...], ...]:
    return _category_cliques(k, cap)
