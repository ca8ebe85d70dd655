"""Clique incidence systems of the category graph and multicolorings."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from ..category import CategoryGraph, CategoryLabel, build_category_graph
from ..codec import BudgetExceeded

CLIQUE_SYSTEM_MAX_K = 6


@dataclass(frozen=True)
class MultiColoring:
    colors: Mapping[CategoryLabel, frozenset[int]]

    @property
    def total(self) -> int:
        used: set[int] = set()
        for cs in self.colors.values():
            used |= cs
        return len(used)

    def of(self, v: CategoryLabel) -> frozenset[int]:
        return self.colors.get(v, frozenset())


def is_valid_multicoloring(mc: MultiColoring, cg: CategoryGraph) -> bool:
    """Right multiplicities, and non-adjacent categories never share a color."""
    for v in cg.vertices:
        if len(mc.of(v)) != cg.w(v):
            return False
    verts = [v for v in cg.vertices if cg.w(v)]
    for i, u in enumerate(verts):
        for v in verts[i + 1:]:
            if not u.adjacent(v) and mc.of(u) & mc.of(v):
                return False
    return True


@dataclass(frozen=True)
class CliqueSystem:
    """All cliques of the k-skeleton and their category incidence matrix.

    Columns are ordered by clique size, then lexicographically by category
    index, so the first f1(k) columns are the singletons and A starts with
    an identity block.
    """

    k: int
    vertices: tuple[CategoryLabel, ...]
    cliques: tuple[tuple[int, ...], ...]
    A: np.ndarray

    @property
    def f1(self) -> int:
        return len(self.vertices)

    @property
    def f2(self) -> int:
        return len(self.cliques)

    def column(self, members: Sequence[CategoryLabel]) -> int:
        idx = {v: i for i, v in enumerate(self.vertices)}
        key = tuple(sorted(idx[v] for v in members))
        return self.cliques.index(key)

    def weight_vector(self, cg: CategoryGraph) -> np.ndarray:
        if cg.k != self.k:
            raise ValueError("category graph and clique system disagree on k")
        return np.array([cg.w(v) for v in self.vertices], dtype=np.int64)


def enumerate_cliques(vertices: Sequence[CategoryLabel]) -> list[tuple[int, ...]]:
    """Every nonempty clique once, as sorted index tuples."""
    out: list[tuple[int, ...]] = []

    def grow(cur: tuple[int, ...], cands: list[int]) -> None:
        for pos, i in enumerate(cands):
            c = cur + (i,)
            out.append(c)
            grow(c, [j for j in cands[pos + 1:] if vertices[i].adjacent(vertices[j])])

    grow((), list(range(len(vertices))))
    out.sort(key=lambda c: (len(c), c))
    return out


@lru_cache(maxsize=None)
def clique_system(k: int) -> CliqueSystem:
    if k < 2:
        raise ValueError(f"clique systems need k >= 2, got {k}")
    if k > CLIQUE_SYSTEM_MAX_K:
        raise BudgetExceeded(f"clique enumeration supports k <= {CLIQUE_SYSTEM_MAX_K}, got {k}")
    cg = build_category_graph(k)
    cliques = enumerate_cliques(cg.vertices)
    a = np.zeros((len(cg.vertices), len(cliques)), dtype=np.int64)
    for j, c in enumerate(cliques):
        a[list(c), j] = 1
    a.setflags(write=False)
    return CliqueSystem(k, cg.vertices, tuple(cliques), a)


def multicoloring_from_vector(cs: CliqueSystem, c: Sequence[int]) -> MultiColoring:
    """Give every clique ``c[j]`` fresh colors shared by all its categories."""
    colors: dict[CategoryLabel, set[int]] = {v: set() for v in cs.vertices}
    nxt = 0
    for j, mult in enumerate(c):
        for _ in range(int(mult)):
            for i in cs.cliques[j]:
                colors[cs.vertices[i]].add(nxt)
            nxt += 1
    return MultiColoring({v: frozenset(s) for v, s in colors.items()})
