"""Plain LP-based branch and bound for the clique multicoloring ILP."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .cliques import CliqueSystem

_INT_TOL = 1e-6


@dataclass(frozen=True)
class BnBResult:
    c: np.ndarray
    objective: int
    nodes: int
    lp_bound: float


def _lp(a: np.ndarray, w: np.ndarray, lo: np.ndarray, hi: np.ndarray):
    res = linprog(
        np.ones(a.shape[1]),
        A_eq=a,
        b_eq=w,
        bounds=list(zip(lo, hi)),
        method="highs",
    )
    return res if res.status == 0 else None


def _round_up(a: np.ndarray, w: np.ndarray, x: np.ndarray, cliques) -> np.ndarray:
    """Feasible integer point from an LP point: floor, then cover what is left.

    ``a`` must start with the singleton identity block.
    """
    c = np.floor(x + _INT_TOL).astype(np.int64)
    c = np.maximum(c, 0)
    residual = w - a @ c
    if (residual < 0).any():
        return None
    # greedily cover the residual with the largest cliques still fully needed
    order = sorted(range(len(cliques)), key=lambda j: -len(cliques[j]))
    for j in order:
        members = list(cliques[j])
        take = int(residual[members].min())
        if take > 0:
            c[j] += take
            residual[members] -= take
    return c


def branch_and_bound(cs: CliqueSystem, w: Sequence[int], max_nodes: int = 200_000) -> BnBResult:
    """Exact ``min 1.c, A c = w, c >= 0 integer`` by depth-first branch and bound.

    Cliques touching a zero-weight category are fixed at zero up front.
    """
    w = np.asarray(w, dtype=np.int64)
    n = int(w.sum())
    full = np.zeros(cs.f2, dtype=np.int64)
    if n == 0:
        return BnBResult(full, 0, 0, 0.0)
    support = {i for i in range(cs.f1) if w[i] > 0}
    cols = [j for j, c in enumerate(cs.cliques) if set(c) <= support]
    rows = sorted(support)
    a = cs.A[np.ix_(rows, cols)]
    ww = w[rows]
    sub_cliques = [tuple(rows.index(i) for i in cs.cliques[j]) for j in cols]

    best_c = np.zeros(len(cols), dtype=np.int64)
    best_c[: len(rows)] = ww  # singleton start: columns are sorted by size then index
    best = int(ww.sum())
    nodes = 0
    root_bound = None
    stack = [(np.zeros(len(cols)), np.full(len(cols), float(n)))]
    while stack:
        lo, hi = stack.pop()
        nodes += 1
        if nodes > max_nodes:
            raise RuntimeError(f"branch and bound exceeded {max_nodes} nodes")
        res = _lp(a, ww, lo, hi)
        if res is None:
            continue
        bound = math.ceil(res.fun - _INT_TOL)
        if root_bound is None:
            root_bound = float(res.fun)
        if bound >= best:
            continue
        x = res.x
        frac = np.abs(x - np.rint(x))
        if frac.max() <= _INT_TOL:
            cand = np.rint(x).astype(np.int64)
            if np.array_equal(a @ cand, ww) and int(cand.sum()) < best:
                best, best_c = int(cand.sum()), cand
            continue
        heur = _round_up(a, ww, x, sub_cliques)
        if heur is not None and int(heur.sum()) < best:
            best, best_c = int(heur.sum()), heur
            if bound >= best:
                continue
        j = int(np.argmax(frac))
        down_hi = hi.copy()
        down_hi[j] = math.floor(x[j])
        up_lo = lo.copy()
        up_lo[j] = math.ceil(x[j])
        stack.append((lo, down_hi))
        stack.append((up_lo, hi))
    full[cols] = best_c
    assert np.array_equal(cs.A @ full, w)
    return BnBResult(full, best, nodes, root_bound or 0.0)
