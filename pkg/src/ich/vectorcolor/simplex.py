"""Exact revised simplex for covering LPs with integer data.

Solves ``min c.x  s.t.  A x >= b, x >= 0`` for integer ``A``, ``b >= 0`` and
``c >= 0``. The basis inverse is kept fraction-free as ``N / D`` with
``D = |det B|``; every update divides exactly, so all arithmetic is on
Python integers and the returned values are exact ``Fraction``s.
Two phases; Bland's rule picks both the entering and the leaving variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

Column = Mapping[int, int]

_INT64_SAFE = 1 << 60


class LPInfeasible(ValueError):
    pass


@dataclass(frozen=True)
class LPResult:
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    objective: Fraction
    iterations: int


def _as_int(v) -> int:
    f = Fraction(v)
    if f.denominator != 1:
        raise ValueError(f"integer data required, got {v}")
    return int(f)


class _Tableau:
    def __init__(self, m: int, columns: list[dict[int, int]], b: list[int]):
        self.m = m
        self.n_struct = len(columns)
        # structural, then surplus (-e_i), then artificial (+e_i)
        self.cols = columns + [{i: -1} for i in range(m)] + [{i: 1} for i in range(m)]
        self.first_art = self.n_struct + m
        dense = np.zeros((self.first_art, m), dtype=np.int64)
        for j, col in enumerate(self.cols[: self.first_art]):
            for r, a in col.items():
                dense[j, r] = a
        self.dense = dense
        self.col_l1 = int(np.abs(dense).sum(axis=1).max()) if self.first_art else 0
        self.basis = [self.first_art + i for i in range(m)]
        self.is_basic = np.zeros(len(self.cols), dtype=bool)
        self.is_basic[self.basis] = True
        self.N = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
        self.D = 1
        self.xh = list(b)
        self.iterations = 0

    def duals(self, cost: list[int]) -> list[int]:
        """Integer ``y_hat`` with duals ``y = y_hat / D``."""
        y = [0] * self.m
        for i, var in enumerate(self.basis):
            cb = cost[var]
            if cb:
                for j, v in enumerate(self.N[i]):
                    if v:
                        y[j] += cb * v
        return y

    def ftran(self, q: int) -> list[int]:
        col = self.cols[q]
        return [sum(row[r] * a for r, a in col.items()) for row in self.N]

    def pivot(self, r: int, q: int, u: list[int]) -> None:
        piv, d = u[r], self.D
        prow, xr = self.N[r], self.xh[r]
        for i in range(self.m):
            if i == r:
                continue
            ui = u[i]
            row = self.N[i]
            if ui:
                self.N[i] = [(a * piv - ui * p) // d for a, p in zip(row, prow)]
                self.xh[i] = (self.xh[i] * piv - ui * xr) // d
            elif piv != d:
                self.N[i] = [a * piv // d for a in row]
                self.xh[i] = self.xh[i] * piv // d
        self.D = piv
        if piv < 0:
            self.N = [[-a for a in row] for row in self.N]
            self.xh = [-a for a in self.xh]
            self.D = -piv
        self.is_basic[self.basis[r]] = False
        self.basis[r] = q
        self.is_basic[q] = True
        self.iterations += 1

    def entering(self, cost: np.ndarray, y: list[int]) -> int:
        """Lowest-index column with negative reduced cost, or -1."""
        big = max((abs(v) for v in y), default=0)
        if big * max(self.col_l1, 1) + int(cost.max(initial=0)) * self.D < _INT64_SAFE:
            red = cost * self.D - self.dense @ np.array(y, dtype=np.int64)
        else:
            red = cost.astype(object) * self.D - self.dense.astype(object) @ np.array(y, dtype=object)
        hits = np.flatnonzero((red < 0) & ~self.is_basic[: self.first_art])
        return int(hits[0]) if len(hits) else -1

    def run(self, cost: list[int]) -> None:
        c = np.array(cost[: self.first_art], dtype=np.int64)
        while True:
            q = self.entering(c, self.duals(cost))
            if q < 0:
                return
            u = self.ftran(q)
            r = -1
            for i in range(self.m):
                if u[i] > 0:
                    if r < 0:
                        r = i
                        continue
                    lhs, rhs = self.xh[i] * u[r], self.xh[r] * u[i]
                    if lhs < rhs or lhs == rhs and self.basis[i] < self.basis[r]:
                        r = i
            if r < 0:
                raise AssertionError("covering LP with nonnegative costs cannot be unbounded")
            self.pivot(r, q, u)

    def drive_out_artificials(self) -> None:
        for r in range(self.m):
            if self.basis[r] < self.first_art:
                continue
            row = np.array(self.N[r], dtype=object)
            vals = self.dense.astype(object) @ row
            for j in np.flatnonzero(vals != 0):
                if not self.is_basic[j]:
                    self.pivot(r, int(j), self.ftran(int(j)))
                    break
            else:
                raise AssertionError("surplus columns span every row")


def solve_covering(
    columns: Sequence[Column],
    rhs: Sequence[int],
    cost: Sequence[int] | None = None,
) -> LPResult:
    """Exact optimum and dual certificate of ``min c.x, A x >= b, x >= 0``."""
    m = len(rhs)
    b = [_as_int(v) for v in rhs]
    if any(v < 0 for v in b):
        raise ValueError("right-hand side must be nonnegative")
    cols = [{int(r): _as_int(a) for r, a in col.items() if a} for col in columns]
    if any(r >= m or r < 0 for col in cols for r in col):
        raise ValueError("column row index out of range")
    c = [_as_int(v) for v in cost] if cost is not None else [1] * len(cols)
    if len(c) != len(cols) or any(v < 0 for v in c):
        raise ValueError("costs must be nonnegative, one per column")
    tab = _Tableau(m, cols, b)
    n_all = len(tab.cols)
    tab.run([0] * tab.first_art + [1] * m)
    if any(tab.xh[i] for i in range(m) if tab.basis[i] >= tab.first_art):
        raise LPInfeasible("covering constraints cannot be met")
    tab.drive_out_artificials()
    phase2 = c + [0] * (n_all - len(c))
    tab.run(phase2)
    x = [Fraction(0)] * len(cols)
    for i, var in enumerate(tab.basis):
        if var < len(cols):
            x[var] = Fraction(tab.xh[i], tab.D)
    y = [Fraction(v, tab.D) for v in tab.duals(phase2)]
    obj = sum((c[j] * x[j] for j in range(len(cols))), Fraction(0))
    res = LPResult(tuple(x), tuple(y), obj, tab.iterations)
    check_certificate(cols, b, c, res)
    return res


def check_certificate(columns, b, c, res: LPResult) -> None:
    """Primal and dual feasibility plus complementary slackness, exactly."""
    m = len(b)
    lhs = [Fraction(0)] * m
    for j, col in enumerate(columns):
        if res.x[j] < 0:
            raise AssertionError(f"negative primal value at column {j}")
        for r, a in col.items():
            lhs[r] += a * res.x[j]
    for r in range(m):
        if lhs[r] < b[r]:
            raise AssertionError(f"primal row {r} violated")
        if res.y[r] < 0:
            raise AssertionError(f"negative dual at row {r}")
        if res.y[r] and lhs[r] != b[r]:
            raise AssertionError(f"slack row {r} carries a positive dual")
    for j, col in enumerate(columns):
        red = c[j] - sum((res.y[r] * a for r, a in col.items()), Fraction(0))
        if red < 0:
            raise AssertionError(f"dual constraint {j} violated")
        if res.x[j] and red:
            raise AssertionError(f"positive column {j} with nonzero reduced cost")
    if res.objective != sum((b[r] * res.y[r] for r in range(m)), Fraction(0)):
        raise AssertionError("primal and dual objectives differ")
