"""Graver bases of clique systems and augmentation-based ILP solving.

The integer program is ``min 1.c  s.t.  A c = w,  0 <= c <= n``. A Graver
basis of ``A`` is an optimality test set for it: a feasible point is optimal
iff no basis element improves it while staying in the box.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .cliques import CliqueSystem, clique_system

GRAVER_MAX_K = 3


class AugmentationBudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class GraverBasis:
    k: int
    elements: np.ndarray  # shape (f3, f2)
    delta: int
    rank: int
    bound: int
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def size(self) -> int:
        return int(self.elements.shape[0])


def conformal_leq(g: np.ndarray, v: np.ndarray) -> bool:
    """``g`` lies in ``v``'s orthant and is dominated by it componentwise."""
    return bool(((g * v) >= 0).all() and (np.abs(g) <= np.abs(v)).all())


def _conformal_rows(rows: np.ndarray, v: np.ndarray, cols=None) -> np.ndarray:
    if cols is not None:
        rows, v = rows[:, cols], v[cols]
    return ((rows * v) >= 0).all(axis=1) & (np.abs(rows) <= np.abs(v)).all(axis=1)


def minimal_elements(vectors: np.ndarray) -> np.ndarray:
    """Drop every vector that has a different, conformally smaller vector in the set."""
    vecs = np.unique(vectors, axis=0)
    vecs = vecs[np.abs(vecs).sum(axis=1) > 0]
    keep = []
    for i, v in enumerate(vecs):
        below = _conformal_rows(vecs, v)
        below[i] = False
        if not below.any():
            keep.append(i)
    return vecs[keep]


def max_subdeterminant(a: np.ndarray) -> int:
    """Largest |det| over all square submatrices, by exhaustive enumeration.

    For ``A = [I | B]`` every square minor is, up to sign, a minor of ``B``
    (or 1), so only ``B`` is scanned when an identity block is detected.
    """
    a = np.asarray(a, dtype=np.int64)
    m, f = a.shape
    if m and f >= m and (a[:, :m] == np.eye(m, dtype=np.int64)).all():
        a = a[:, m:]
        best = 1
    else:
        best = 0
    r, c = a.shape
    for size in range(1, min(r, c) + 1):
        rows = np.array(list(itertools.combinations(range(r), size)))
        cols = np.array(list(itertools.combinations(range(c), size)))
        for rs in rows:
            sub = a[rs][:, cols]  # (size, ncols, size)
            sub = np.transpose(sub, (1, 0, 2)).astype(float)
            dets = np.abs(np.rint(np.linalg.det(sub))).astype(np.int64)
            best = max(best, int(dets.max(initial=0)))
    return best


def hadamard_bound(a: np.ndarray) -> int:
    """Safe overestimate of the maximal subdeterminant of a 0/1 matrix."""
    a = np.asarray(a)
    m = a.shape[0]
    col_norms = sorted(np.sqrt((a * a).sum(axis=0)), reverse=True)[:m]
    return int(math.floor(math.prod(col_norms) + 1e-9))


def _lattice_basis(cs: CliqueSystem) -> tuple[np.ndarray, list[int], list[int]]:
    """Kernel basis: unit on one non-singleton clique, -1 on its members."""
    a = cs.A
    single = [j for j, c in enumerate(cs.cliques) if len(c) == 1]
    multi = [j for j, c in enumerate(cs.cliques) if len(c) > 1]
    basis = np.zeros((len(multi), cs.f2), dtype=np.int64)
    for row, j in enumerate(multi):
        basis[row, j] = 1
        basis[row, single] = -a[:, j]
    return basis, single, multi


def graver_basis(cs: CliqueSystem | int, method: str = "lift", max_k: int = GRAVER_MAX_K) -> GraverBasis:
    """Graver basis of the clique incidence matrix.

    ``lift`` runs project-and-lift: the kernel projects bijectively onto the
    non-singleton coordinates, where the Graver basis is the signed unit
    vectors, and singleton coordinates are lifted back one at a time.
    ``completion`` runs the plain completion procedure from a lattice basis
    and serves as an independent cross-check.
    """
    if isinstance(cs, int):
        cs = clique_system(cs)
    if cs.k > max_k:
        raise ValueError(
            f"online Graver computation is limited to k <= {max_k}; "
            "load a precomputed basis file instead (ich graver --k K -o basis.json)"
        )
    if method == "lift":
        elems = _project_and_lift(cs)
    elif method == "completion":
        elems = _completion(cs)
    else:
        raise ValueError(f"unknown method {method!r}")
    elems = minimal_elements(elems)
    rank = int(np.linalg.matrix_rank(cs.A))
    delta = max_subdeterminant(cs.A) if cs.k <= 3 else hadamard_bound(cs.A)
    bound = (cs.f2 - rank) * delta
    order = np.lexsort(np.vstack([elems.T[::-1], np.abs(elems).sum(axis=1)]))
    elems = elems[order]
    elems.setflags(write=False)
    return GraverBasis(cs.k, elems, delta, rank, bound, {"method": method})


def _reduce(s: np.ndarray, rows: np.ndarray, cols) -> np.ndarray:
    while s[cols].any():
        hits = np.nonzero(_conformal_rows(rows, s, cols))[0]
        if not len(hits):
            break
        s = s - rows[hits[0]]
    return s


def _project_and_lift(cs: CliqueSystem) -> np.ndarray:
    basis, single, multi = _lattice_basis(cs)
    elems = [b.copy() for b in basis] + [-b for b in basis]
    sigma = list(multi)
    for j in single:
        tau = sigma + [j]
        rows = np.array(elems)

        def critical(f: np.ndarray, rows: np.ndarray) -> list[np.ndarray]:
            # pairs sign-compatible on the lifted part, opposite on the new coordinate
            ok = ((rows[:, sigma] * f[sigma]) >= 0).all(axis=1) & (rows[:, j] * f[j] < 0)
            return [f + rows[i] for i in np.nonzero(ok)[0]]

        pending: list[np.ndarray] = []
        for f in elems:
            pending.extend(critical(f, rows))
        while pending:
            s = _reduce(pending.pop(), rows, tau)
            if s[tau].any():
                pending.extend(critical(s, rows))
                elems.append(s)
                rows = np.vstack([rows, s])
        sigma = tau
    return np.array(elems)


def _completion(cs: CliqueSystem) -> np.ndarray:
    basis, _, _ = _lattice_basis(cs)
    elems = [b.copy() for b in basis] + [-b for b in basis]
    cols = list(range(cs.f2))
    rows = np.array(elems)
    pending = [
        f + g for f, g in itertools.combinations(elems, 2) if (f * g < 0).any()
    ]
    while pending:
        s = pending.pop()
        if not s.any():
            continue
        s = _reduce(s, rows, cols)
        if s.any():
            pending.extend(s + g for g in rows if (s * g < 0).any())
            elems.append(s)
            rows = np.vstack([rows, s])
    return rows


def conformal_decomposition(v: np.ndarray, gb: GraverBasis) -> list[int] | None:
    """Greedy conformal decomposition of a kernel vector into basis elements.

    Returns the indices used, or ``None`` when some nonzero remainder has no
    conformally smaller element (which means the basis is incomplete).
    """
    used = []
    rows = gb.elements
    cols = list(range(rows.shape[1]))
    v = np.asarray(v, dtype=np.int64).copy()
    while v.any():
        hits = np.nonzero(_conformal_rows(rows, v, cols))[0]
        if not len(hits):
            return None
        used.append(int(hits[0]))
        v = v - rows[hits[0]]
    return used


def save_basis(gb: GraverBasis, cs: CliqueSystem, path) -> None:
    doc = {
        "k": gb.k,
        "delta": gb.delta,
        "rank": gb.rank,
        "bound": gb.bound,
        "cliques": [[str(cs.vertices[i]) for i in c] for c in cs.cliques],
        "elements": gb.elements.tolist(),
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def load_basis(path) -> GraverBasis:
    with open(path) as fh:
        doc = json.load(fh)
    cs = clique_system(int(doc["k"]))
    names = [[str(cs.vertices[i]) for i in c] for c in cs.cliques]
    if doc["cliques"] != names:
        raise ValueError("basis file clique table does not match this build's clique order")
    elems = np.array(doc["elements"], dtype=np.int64).reshape(-1, cs.f2)
    elems.setflags(write=False)
    return GraverBasis(int(doc["k"]), elems, int(doc["delta"]), int(doc["rank"]), int(doc["bound"]), {"method": "file"})


def augment(c: Sequence[int], gb: GraverBasis, w: Sequence[int], n: int, a: np.ndarray | None = None) -> np.ndarray:
    """One call of the augmentation oracle for ``min 1.c``.

    Picks the basis element with the most negative objective change among
    those keeping ``c + g`` inside ``[0, n]``; returns ``c`` unchanged when
    none exists.
    """
    c = np.asarray(c, dtype=np.int64)
    if a is None:
        a = clique_system(gb.k).A
    if (c < 0).any() or (c > n).any() or not np.array_equal(a @ c, np.asarray(w)):
        raise ValueError("augment needs a feasible starting point")
    g = gb.elements
    gain = g.sum(axis=1)
    cand = c[None, :] + g
    ok = (gain < 0) & (cand >= 0).all(axis=1) & (cand <= n).all(axis=1)
    if not ok.any():
        return c
    idx = np.nonzero(ok)[0]
    best = idx[np.argmin(gain[idx])]
    return cand[best]


@dataclass(frozen=True)
class IntProgResult:
    c: np.ndarray
    objective: int
    calls: int
    trajectory: tuple[int, ...]


def optintprog(cs: CliqueSystem, w: Sequence[int], gb: GraverBasis | None = None) -> IntProgResult:
    """Augment from the all-singleton start until the oracle returns its input.

    The number of oracle calls is checked against 2 n f2(k).
    """
    if gb is None:
        gb = graver_basis(cs)
    w = np.asarray(w, dtype=np.int64)
    if (w < 0).any():
        raise ValueError("weights must be nonnegative")
    n = int(w.sum())
    c = np.zeros(cs.f2, dtype=np.int64)
    c[: cs.f1] = w
    if n == 0:
        return IntProgResult(c, 0, 0, (0,))
    budget = 2 * n * cs.f2
    calls = 0
    traj = [int(c.sum())]
    while True:
        calls += 1
        if calls > budget:
            raise AugmentationBudgetError(f"exceeded {budget} augmentation calls")
        nxt = augment(c, gb, w, n, cs.A)
        if np.array_equal(nxt, c):
            break
        c = nxt
        traj.append(int(c.sum()))
    return IntProgResult(c, int(c.sum()), calls, tuple(traj))
