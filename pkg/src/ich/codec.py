"""Code objects, GF(2) verification, decode simulation and a brute-force minrank."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .sigraph import DirectedSIGraph, UndirectedSIGraph, underlying_undirected

MINRANK_MAX_FREE = 22
_CHUNK = 1 << 15


class BudgetExceeded(ValueError):
    """An exhaustive routine was asked to run beyond its size budget."""


@dataclass(frozen=True)
class XorCode:
    """Scalar XOR code: transmission ``l`` is the XOR of the listed packets."""

    n: int
    transmissions: tuple[tuple[int, ...], ...]

    @property
    def t(self) -> int:
        return len(self.transmissions)

    def matrix(self) -> np.ndarray:
        g = np.zeros((self.t, self.n), dtype=np.uint8)
        for row, users in enumerate(self.transmissions):
            g[row, list(users)] = 1
        return g

    @classmethod
    def from_matrix(cls, g: np.ndarray) -> "XorCode":
        rows = tuple(tuple(int(j) for j in np.nonzero(r)[0]) for r in np.asarray(g))
        return cls(int(np.asarray(g).shape[1]), rows)

    def to_json(self) -> dict:
        return {"t": self.t, "transmissions": [list(r) for r in self.transmissions]}

    @classmethod
    def from_json(cls, doc: dict, n: int) -> "XorCode":
        return cls(n, tuple(tuple(int(u) for u in r) for r in doc["transmissions"]))


@dataclass(frozen=True)
class VectorXorCode:
    """Vector XOR code over ``p`` sub-packets per packet.

    Each transmission lists ``(user, sub_packet)`` pairs. ``t_g2`` counts the
    coded transmissions over G2; singleton transmissions of out-vertices
    follow them.
    """

    n: int
    p: int
    transmissions: tuple[tuple[tuple[int, int], ...], ...]
    t_g2: int | None = None

    @property
    def t(self) -> int:
        return len(self.transmissions)

    @property
    def rate(self) -> Fraction:
        return Fraction(self.t, self.p) if self.p else Fraction(0)

    @property
    def g2_rate(self) -> Fraction:
        t = self.t if self.t_g2 is None else self.t_g2
        return Fraction(t, self.p) if self.p else Fraction(0)

    def to_json(self) -> dict:
        r = self.rate
        return {
            "t": self.t,
            "p": self.p,
            "transmissions": [[list(pair) for pair in tx] for tx in self.transmissions],
            "rate": f"{r.numerator}/{r.denominator}",
            "t_g2": self.t_g2,
        }

    @classmethod
    def from_json(cls, doc: dict, n: int) -> "VectorXorCode":
        txs = tuple(tuple((int(u), int(j)) for u, j in tx) for tx in doc["transmissions"])
        return cls(n, int(doc["p"]), txs, doc.get("t_g2"))


@dataclass(frozen=True)
class MinrankResult:
    value: int
    witness: np.ndarray


def load_code(path, n: int) -> XorCode | VectorXorCode:
    with open(path) as fh:
        doc = json.load(fh)
    if "p" in doc:
        return VectorXorCode.from_json(doc, n)
    return XorCode.from_json(doc, n)


def dump_code(code: XorCode | VectorXorCode, path) -> None:
    with open(path, "w") as fh:
        json.dump(code.to_json(), fh)
        fh.write("\n")


def verify_xor_code(code: XorCode, gd: DirectedSIGraph | UndirectedSIGraph) -> bool:
    """Column-support-one plus every transmission being a side-information clique."""
    g = underlying_undirected(gd) if isinstance(gd, DirectedSIGraph) else gd
    if code.n != len(g.vertices):
        return False
    seen = [0] * code.n
    for users in code.transmissions:
        if not users:
            return False
        for u in users:
            if not 0 <= u < code.n:
                return False
            seen[u] += 1
        if len(set(users)) != len(users) or not g.is_clique(users):
            return False
    return all(c == 1 for c in seen)


def verify_vector_code(code: VectorXorCode, gd: DirectedSIGraph | UndirectedSIGraph) -> bool:
    """Each (user, sub-packet) sent exactly once, each transmission a clique."""
    g = underlying_undirected(gd) if isinstance(gd, DirectedSIGraph) else gd
    if code.n != len(g.vertices) or code.p < 1 and code.n:
        return False
    seen: set[tuple[int, int]] = set()
    for tx in code.transmissions:
        if not tx:
            return False
        users = [u for u, _ in tx]
        if len(set(users)) != len(users) or not g.is_clique(users):
            return False
        for u, j in tx:
            if not (0 <= u < code.n and 0 <= j < code.p) or (u, j) in seen:
                return False
            seen.add((u, j))
    return len(seen) == code.n * code.p


def _side_info(gd: DirectedSIGraph | UndirectedSIGraph) -> list[frozenset[int]]:
    if isinstance(gd, DirectedSIGraph):
        return list(gd.out)
    return [gd.adj[v] for v in gd.vertices]


def simulate_decode(
    code: XorCode | VectorXorCode,
    gd: DirectedSIGraph | UndirectedSIGraph,
    trials: int = 100,
    seed: int | None = 0,
    check: bool = True,
) -> bool:
    """Broadcast random payloads and let every user decode from its one transmission.

    Payloads are 64-bit words, so each trial is 64 independent bit
    experiments. A user cancels the other packets of its transmission that it
    holds as side information; packets it lacks stay in as interference.
    With ``check=False`` the structural verification is skipped so that a
    malformed code is caught by decoding alone.
    """
    if isinstance(code, VectorXorCode):
        return _simulate_vector(code, gd, trials, seed, check)
    if check and not verify_xor_code(code, gd):
        return False
    if code.n == 0:
        return True
    side = _side_info(gd)
    first: dict[int, int] = {}
    for row, users in enumerate(code.transmissions):
        for u in users:
            first.setdefault(u, row)
    if len(first) < code.n:
        return False
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x = rng.integers(0, np.iinfo(np.uint64).max, size=code.n, dtype=np.uint64, endpoint=True)
        y = [np.bitwise_xor.reduce(x[list(users)]) if users else np.uint64(0) for users in code.transmissions]
        for i in range(code.n):
            est = y[first[i]]
            for j in code.transmissions[first[i]]:
                if j != i and j in side[i]:
                    est ^= x[j]
            if est != x[i]:
                return False
    return True


def _simulate_vector(code: VectorXorCode, gd, trials: int, seed, check: bool) -> bool:
    if check and not verify_vector_code(code, gd):
        return False
    if code.n == 0:
        return True
    side = _side_info(gd)
    where: dict[tuple[int, int], int] = {}
    for row, tx in enumerate(code.transmissions):
        for pair in tx:
            where.setdefault(pair, row)
    if len(where) < code.n * code.p:
        return False
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x = rng.integers(0, np.iinfo(np.uint64).max, size=(code.n, code.p), dtype=np.uint64, endpoint=True)
        y = []
        for tx in code.transmissions:
            acc = np.uint64(0)
            for u, j in tx:
                acc ^= x[u, j]
            y.append(acc)
        for (i, j), row in where.items():
            est = y[row]
            for u, s in code.transmissions[row]:
                if u != i and u in side[i]:
                    est ^= x[u, s]
            if est != x[i, j]:
                return False
    return True


# --- minrank --------------------------------------------------------------------


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) of a matrix stored as integer row bitsets."""
    work = [r for r in rows if r]
    rank = 0
    while work:
        pivot = work.pop()
        if not pivot:
            continue
        rank += 1
        low = pivot & -pivot
        work = [r ^ pivot if r & low else r for r in work]
        work = [r for r in work if r]
    return rank


def _batch_rank(rows: np.ndarray) -> np.ndarray:
    """GF(2) ranks of a batch: ``rows`` has shape (m, batch) of uint64 bitsets."""
    work = rows.copy()
    m, batch = work.shape
    rank = np.zeros(batch, dtype=np.int64)
    alive = np.ones((m, batch), dtype=bool)
    for col in range(m):
        bit = np.uint64(1 << col)
        has = ((work & bit) != 0) & alive
        any_has = has.any(axis=0)
        if not any_has.any():
            continue
        piv = has.argmax(axis=0)
        cols = np.arange(batch)
        pivot_rows = work[piv, cols]
        pivot_rows = np.where(any_has, pivot_rows, np.uint64(0))
        alive[piv[any_has], cols[any_has]] = False
        elim = has & ~(np.arange(m)[:, None] == piv[None, :])
        work ^= np.where(elim, pivot_rows[None, :], np.uint64(0))
        rank += any_has
    return rank


def strongly_connected_components(gd: DirectedSIGraph) -> list[list[int]]:
    """Tarjan's algorithm, iterative."""
    index = {}
    low = {}
    stack: list[int] = []
    on_stack: set[int] = set()
    comps = []
    counter = 0
    for root in range(gd.n):
        if root in index:
            continue
        work = [(root, iter(sorted(gd.out[root])))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(gd.out[w]))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def _minrank_block(vertices: list[int], edges: list[tuple[int, int]]) -> tuple[int, dict[int, int]]:
    """Exhaustive minimum rank over all fitting matrices of one block.

    Returns the rank and the winning row bitsets (columns indexed by position
    in ``vertices``).
    """
    pos = {v: i for i, v in enumerate(vertices)}
    m = len(vertices)
    base = np.array([1 << i for i in range(m)], dtype=np.uint64)
    free = [(pos[a], pos[b]) for a, b in edges]
    e = len(free)
    best, best_mask = m + 1, 0
    total = 1 << e
    for start in range(0, total, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, total), dtype=np.uint64)
        rows = np.repeat(base[:, None], len(masks), axis=1)
        for bit, (r, c) in enumerate(free):
            on = (masks >> np.uint64(bit)) & np.uint64(1)
            rows[r] |= on << np.uint64(c)
        ranks = _batch_rank(rows)
        i = int(ranks.argmin())
        if ranks[i] < best:
            best, best_mask = int(ranks[i]), int(masks[i])
    rows = {v: 1 << pos[v] for v in vertices}
    for bit, (r, c) in enumerate(free):
        if best_mask >> bit & 1:
            rows[vertices[r]] |= 1 << c
    return best, rows


def minrank_bruteforce(gd: DirectedSIGraph, split_components: bool = True) -> MinrankResult:
    """Exact GF(2) minrank by enumerating fitting matrices.

    A fitting matrix has unit diagonal and may be nonzero at ``(i, j)`` only
    for edges of ``gd``. Entries between different strongly connected
    components are fixed at zero when ``split_components`` is set: the matrix
    is then block triangular and its rank is at least the sum of its
    diagonal-block ranks, so those entries can never lower the rank.
    """
    if gd.n_edges > MINRANK_MAX_FREE:
        raise BudgetExceeded(
            f"minrank enumeration needs {gd.n_edges} free entries; the budget is {MINRANK_MAX_FREE}"
        )
    blocks = strongly_connected_components(gd) if split_components else [list(range(gd.n))]
    witness = np.eye(gd.n, dtype=np.uint8)
    total = 0
    for comp in blocks:
        inside = set(comp)
        edges = [(a, b) for a in comp for b in sorted(gd.out[a]) if b in inside]
        r, rows = _minrank_block(comp, edges)
        total += r
        for v, bits in rows.items():
            for c, u in enumerate(comp):
                if bits >> c & 1:
                    witness[v, u] = 1
    return MinrankResult(total, witness)


def matrix_rank_gf2(m: np.ndarray) -> int:
    rows = [int("".join(str(int(b)) for b in r[::-1]) or "0", 2) for r in np.asarray(m)]
    return gf2_rank(rows)


def fits(m: np.ndarray, gd: DirectedSIGraph) -> bool:
    m = np.asarray(m)
    for i in range(gd.n):
        if m[i, i] != 1:
            return False
        for j in range(gd.n):
            if i != j and m[i, j] and j not in gd.out[i]:
                return False
    return True
