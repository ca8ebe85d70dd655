"""Closed-form and greedy XOR colorings for two and three helpers."""

from __future__ import annotations

from typing import Mapping, Sequence

from ..category import CategoryGraph, CategoryLabel, label
from ..codec import XorCode
from ..instance import CanonicalInstance
from .cliques import MultiColoring

# Category order for k = 3 (0-based partitions): the six one-complement
# categories pair by pair, then the triangle of fully connected categories.
K3_ORDER: tuple[CategoryLabel, ...] = (
    label(0, 1),
    label(1, 0),
    label(1, 2),
    label(2, 1),
    label(2, 0),
    label(0, 2),
    label(0, 1, 2),
    label(1, 0, 2),
    label(2, 0, 1),
)


def two_helper_optimum(canon: CanonicalInstance) -> tuple[int, XorCode]:
    """Optimal XOR code for two disjoint helpers.

    Length is |C1| + |C2| - min(|S1 & C2|, |S2 & C1|), plus one transmission
    per uncovered user.
    """
    if canon.k != 2:
        raise ValueError(f"two_helper_optimum needs exactly 2 helpers, got {canon.k}")
    h1, h2 = canon.helpers
    side1 = sorted(h1.neighborhood & h2.cache)  # users of helper 1 cached at helper 2
    side2 = sorted(h2.neighborhood & h1.cache)
    m = min(len(side1), len(side2))
    length = len(h1.neighborhood) + len(h2.neighborhood) - m + len(canon.uncovered)
    paired = set(side1[:m]) | set(side2[:m])
    txs = [(a, b) for a, b in zip(side1[:m], side2[:m])]
    txs += [(u,) for u in range(canon.n) if u not in paired]
    code = XorCode(canon.n, tuple(tuple(sorted(t)) for t in txs))
    assert code.t == length
    return length, code


def greedy_multicolor(cg: CategoryGraph, order: Sequence[CategoryLabel] | None = None) -> MultiColoring:
    """Greedy multicoloring of the category-graph complement.

    Categories are processed in ``order``; each receives the ``w(v)``
    smallest colors not already held by itself or by any category it is not
    adjacent to.
    """
    if order is None:
        order = cg.vertices
    colors: dict[CategoryLabel, frozenset[int]] = {}
    for v in order:
        need = cg.w(v)
        if not need:
            colors[v] = frozenset()
            continue
        forbidden: set[int] = set()
        for u, cs in colors.items():
            if u == v or not u.adjacent(v):
                forbidden |= cs
        got = []
        c = 0
        while len(got) < need:
            if c not in forbidden:
                got.append(c)
            c += 1
        colors[v] = frozenset(got)
    for v in cg.vertices:
        colors.setdefault(v, frozenset())
    return MultiColoring(colors)


def greedy_k3(cg: CategoryGraph) -> MultiColoring:
    if cg.k != 3:
        raise ValueError(f"greedy_k3 needs k = 3, got {cg.k}")
    return greedy_multicolor(cg, K3_ORDER)


def k3_count_formula(weights: Mapping[CategoryLabel, int] | CategoryGraph) -> int:
    """Closed-form color count of the k = 3 greedy order.

    p colors serve the three one-complement pairs; fully connected category
    ``(i, {j, k})`` may reuse the p colors except those of ``(i, {j})``,
    ``(i, {k})`` and the pair between j and k; the remainder is met by new
    colors shared across the triangle.
    """
    if isinstance(weights, CategoryGraph):
        if weights.k != 3:
            raise ValueError("k3_count_formula needs k = 3")
        weights = weights.weights

    def w(home: int, *conn: int) -> int:
        return int(weights.get(label(home, *conn), 0))

    pair = {
        frozenset((i, j)): max(w(i, j), w(j, i))
        for i, j in ((0, 1), (1, 2), (0, 2))
    }
    p = sum(pair.values())
    extra = 0
    for i in range(3):
        j, k = (m for m in range(3) if m != i)
        free = p - w(i, j) - w(i, k) - pair[frozenset((j, k))]
        extra = max(extra, w(i, j, k) - free)
    return p + max(extra, 0)
