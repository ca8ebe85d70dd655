"""Fractional multicoloring of the category graph and vector XOR codes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from ..category import CategoryGraph, CategoryLabel, Labeling, categorize
from ..codec import BudgetExceeded, VectorXorCode
from ..instance import CanonicalInstance
from ..sigraph import Decomposition, UndirectedSIGraph, build_side_info_graph, decompose
from .maxcliques import MAXIMAL_CLIQUE_CAP, bk_masks, graph_masks, maximal_clique_indices
from .simplex import solve_covering

FRACTIONAL_BRUTE_MAX_VERTICES = 12


@dataclass(frozen=True)
class FractionalSolution:
    """Optimal fractional clique cover of the weighted category graph.

    ``weights`` maps each clique (maximal cliques cut down to the positive
    weight categories) to its LP value. ``p`` is the lcm of the denominators
    and ``t = p * objective``.
    """

    k: int
    weights: Mapping[tuple[CategoryLabel, ...], Fraction]
    objective: Fraction
    t: int
    p: int
    iterations: int = 0

    @property
    def scaled(self) -> dict[tuple[CategoryLabel, ...], int]:
        return {s: int(c * self.p) for s, c in self.weights.items() if c}


def _restricted_columns(cg: CategoryGraph, cap: int) -> tuple[list[int], list[tuple[int, ...]]]:
    verts = cg.vertices
    rows = [i for i, v in enumerate(verts) if cg.w(v) > 0]
    pos = {i: r for r, i in enumerate(rows)}
    seen: set[tuple[int, ...]] = set()
    cols: list[tuple[int, ...]] = []
    for clique in maximal_clique_indices(cg.k, cap):
        cut = tuple(pos[i] for i in clique if i in pos)
        if cut and cut not in seen:
            seen.add(cut)
            cols.append(cut)
    return rows, cols


def fractional_multicolor(cg: CategoryGraph, cap: int = MAXIMAL_CLIQUE_CAP) -> FractionalSolution:
    """Exact LP ``min sum c(S)`` s.t. every category is covered ``w(v)`` times."""
    rows, cols = _restricted_columns(cg, cap)
    if not rows:
        return FractionalSolution(cg.k, {}, Fraction(0), 0, 1)
    rhs = [cg.w(cg.vertices[i]) for i in rows]
    res = solve_covering([{r: 1 for r in col} for col in cols], rhs)
    p = 1
    for v in res.x:
        p = math.lcm(p, v.denominator)
    weights = {}
    for col, v in zip(cols, res.x):
        if v:
            weights[tuple(cg.vertices[rows[r]] for r in col)] = v
    t = res.objective * p
    assert t.denominator == 1
    return FractionalSolution(cg.k, weights, res.objective, int(t), p, res.iterations)


@dataclass(frozen=True)
class ColorAllocation:
    """Integer colors ``0 .. t-1``; each member of a category keeps ``p`` of them.

    ``clique_colors`` lists the colors each clique owns; ``member_colors[v][i]``
    are the sorted colors of the i-th member (by user id) of category ``v``.
    """

    t: int
    p: int
    clique_colors: Mapping[tuple[CategoryLabel, ...], tuple[int, ...]]
    member_colors: Mapping[CategoryLabel, tuple[tuple[int, ...], ...]]


def reallocate_colors(fs: FractionalSolution, cg: CategoryGraph) -> ColorAllocation:
    """Scale by p, hand each clique consecutive colors, split them among members."""
    clique_colors: dict[tuple[CategoryLabel, ...], tuple[int, ...]] = {}
    incoming: dict[CategoryLabel, list[int]] = {}
    nxt = 0
    for s, cnt in fs.scaled.items():
        colors = tuple(range(nxt, nxt + cnt))
        nxt += cnt
        clique_colors[s] = colors
        for v in s:
            incoming.setdefault(v, []).extend(colors)
    assert nxt == fs.t
    member_colors: dict[CategoryLabel, tuple[tuple[int, ...], ...]] = {}
    used: set[int] = set()
    for v in cg.vertices:
        w = cg.w(v)
        if not w:
            continue
        pool = sorted(incoming.get(v, []))
        if len(pool) < w * fs.p:
            raise AssertionError(f"category {v} receives {len(pool)} colors, needs {w * fs.p}")
        parts = tuple(tuple(pool[i * fs.p:(i + 1) * fs.p]) for i in range(w))
        member_colors[v] = parts
        for part in parts:
            used.update(part)
    if len(used) != fs.t:
        raise AssertionError("some color serves no user; the LP solution is not optimal")
    return ColorAllocation(fs.t, fs.p, clique_colors, member_colors)


def to_vector_code(alloc: ColorAllocation, labeling: Labeling, dec: Decomposition) -> VectorXorCode:
    """Transmission m XORs, for every user holding color m, the sub-packet at
    the position of m in that user's sorted colors. Out-vertices follow as
    ``p`` singleton transmissions each."""
    groups = labeling.groups()
    tx: dict[int, list[tuple[int, int]]] = {}
    for v, users in groups.items():
        for user, colors in zip(users, alloc.member_colors[v]):
            for j, color in enumerate(colors):
                tx.setdefault(color, []).append((user, j))
    txs = [tuple(sorted(tx[c])) for c in sorted(tx)]
    t_g2 = len(txs)
    for u in sorted(dec.out_vertices):
        txs.extend(((u, j),) for j in range(alloc.p))
    return VectorXorCode(dec.n, alloc.p, tuple(txs), t_g2)


@dataclass(frozen=True)
class VectorSolution:
    rate: Fraction
    g2_rate: Fraction
    code: VectorXorCode
    fractional: FractionalSolution | None
    dec: Decomposition
    labeling: Labeling | None


def solve_vector(canon: CanonicalInstance, cap: int = MAXIMAL_CLIQUE_CAP) -> VectorSolution:
    """Optimal vector XOR code of a canonical instance."""
    dec = decompose(build_side_info_graph(canon))
    if not dec.g2.vertices:
        txs = tuple(((u, 0),) for u in sorted(dec.out_vertices))
        code = VectorXorCode(canon.n, 1, txs, 0)
        return VectorSolution(code.rate, Fraction(0), code, None, dec, None)
    labeling = categorize(dec)
    cg = labeling.graph
    fs = fractional_multicolor(cg, cap)
    code = to_vector_code(reallocate_colors(fs, cg), labeling, dec)
    assert code.g2_rate == fs.objective
    return VectorSolution(code.rate, code.g2_rate, code, fs, dec, labeling)


def fractional_chromatic_brute(g: UndirectedSIGraph, limit: int = FRACTIONAL_BRUTE_MAX_VERTICES) -> Fraction:
    """Fractional clique cover number of ``g`` from the LP over its own maximal cliques."""
    if len(g) > limit:
        raise BudgetExceeded(f"fractional brute force limited to {limit} vertices, got {len(g)}")
    if not g.vertices:
        return Fraction(0)
    cols = []
    for m in bk_masks(graph_masks(g)):
        cols.append({i: 1 for i in range(len(g)) if m >> i & 1})
    return solve_covering(cols, [1] * len(g)).objective
