"""Category labels, the k-dependent category graph and its expansion."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .sigraph import Decomposition, UndirectedSIGraph, check_complete_bipartite_structure

MIN_K = 2
MAX_K = 8


@dataclass(frozen=True, order=True)
class CategoryLabel:
    """Home partition plus the partitions holding at least one neighbor."""

    home: int
    connected: tuple[int, ...]

    def __post_init__(self):
        if not self.connected:
            raise ValueError("a category needs at least one connected partition")
        if self.home in self.connected:
            raise ValueError("home partition cannot be in the connected set")
        object.__setattr__(self, "connected", tuple(sorted(set(self.connected))))

    def adjacent(self, other: "CategoryLabel") -> bool:
        return self.home in other.connected and other.home in self.connected

    def render(self, k: int) -> str:
        comp = [m for m in range(k) if m != self.home and m not in self.connected]
        return f"V{self.home}->" + "".join(map(str, self.connected)) + "".join(f"{m}^c" for m in comp)

    def __str__(self) -> str:
        return f"V{self.home}->{''.join(map(str, self.connected))}"


def label(home: int, *connected: int) -> CategoryLabel:
    return CategoryLabel(home, tuple(connected))


@dataclass(frozen=True)
class CategoryGraph:
    k: int
    vertices: tuple[CategoryLabel, ...]
    edges: frozenset[frozenset[CategoryLabel]]
    weights: Mapping[CategoryLabel, int] = field(default_factory=dict)

    def w(self, v: CategoryLabel) -> int:
        return self.weights.get(v, 0)

    @property
    def total_weight(self) -> int:
        return sum(self.weights.values())

    def adjacent(self, u: CategoryLabel, v: CategoryLabel) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbors(self, u: CategoryLabel) -> list[CategoryLabel]:
        return _neighbors(self.k)[u]

    def index(self) -> dict[CategoryLabel, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def with_weights(self, weights: Mapping[CategoryLabel, int]) -> "CategoryGraph":
        unknown = set(weights) - set(self.vertices)
        if unknown:
            raise ValueError(f"labels not in the k={self.k} skeleton: {sorted(unknown)}")
        if any(x < 0 for x in weights.values()):
            raise ValueError("weights must be nonnegative")
        return CategoryGraph(self.k, self.vertices, self.edges, {v: int(weights.get(v, 0)) for v in self.vertices})

    def weight_vector(self) -> list[int]:
        return [self.w(v) for v in self.vertices]


def all_labels(k: int) -> tuple[CategoryLabel, ...]:
    out = []
    for home in range(k):
        others = [m for m in range(k) if m != home]
        for r in range(1, k):
            for conn in itertools.combinations(others, r):
                out.append(CategoryLabel(home, conn))
    return tuple(out)


@lru_cache(maxsize=None)
def _skeleton(k: int):
    verts = all_labels(k)
    edges = frozenset(
        frozenset((u, v)) for u, v in itertools.combinations(verts, 2) if u.adjacent(v)
    )
    return verts, edges


@lru_cache(maxsize=None)
def _neighbors(k: int) -> dict[CategoryLabel, list[CategoryLabel]]:
    verts, _ = _skeleton(k)
    return {u: [v for v in verts if u.adjacent(v)] for u in verts}


def build_category_graph(k: int) -> CategoryGraph:
    """Skeleton with all k(2^(k-1) - 1) labels and zero weights."""
    if not MIN_K <= k <= MAX_K:
        raise ValueError(f"k must lie in [{MIN_K}, {MAX_K}], got {k}")
    verts, edges = _skeleton(k)
    return CategoryGraph(k, verts, edges, {v: 0 for v in verts})


@dataclass(frozen=True)
class Labeling:
    """Category of every G2 vertex plus the weighted category graph."""

    of: Mapping[int, CategoryLabel]
    graph: CategoryGraph

    def members(self, v: CategoryLabel) -> list[int]:
        return sorted(u for u, lab in self.of.items() if lab == v)

    def groups(self) -> dict[CategoryLabel, list[int]]:
        out: dict[CategoryLabel, list[int]] = {}
        for u in sorted(self.of):
            out.setdefault(self.of[u], []).append(u)
        return out


def categorize(dec: Decomposition | UndirectedSIGraph, k: int | None = None) -> Labeling:
    """Label every G2 vertex and count category sizes.

    Raises ``ValueError`` when vertices sharing a label do not see exactly the
    vertices of adjacent categories (the input is not a helper instance).
    """
    g = dec.g2 if isinstance(dec, Decomposition) else dec
    if k is None:
        k = dec.k if isinstance(dec, Decomposition) else 1 + max(g.partition.values(), default=0)
    if g.partition is None:
        raise ValueError("graph carries no partition labels")
    if not check_complete_bipartite_structure(g):
        raise ValueError("graph lacks the complete bipartite structure")
    of: dict[int, CategoryLabel] = {}
    for u in g.vertices:
        conn = tuple(sorted({g.partition[v] for v in g.adj[u]}))
        of[u] = CategoryLabel(g.partition[u], conn)
    if not of:
        return Labeling({}, build_category_graph(max(k, MIN_K)))
    cg = build_category_graph(max(k, MIN_K))
    counts: dict[CategoryLabel, int] = {}
    for lab in of.values():
        counts[lab] = counts.get(lab, 0) + 1
    by_label: dict[CategoryLabel, set[int]] = {}
    for u, lab in of.items():
        by_label.setdefault(lab, set()).add(u)
    for u, lab in of.items():
        expected = set()
        for other, us in by_label.items():
            if lab.adjacent(other):
                expected |= us
        if expected != set(g.adj[u]):
            raise ValueError(f"vertex {u} in {lab} violates category equivalence")
    return Labeling(of, cg.with_weights(counts))


def expand(cg: CategoryGraph) -> tuple[UndirectedSIGraph, dict[int, CategoryLabel]]:
    """Replace each category by w(v) independent vertices joined along edges.

    Vertex ids are assigned consecutively in skeleton order.
    """
    owner: dict[int, CategoryLabel] = {}
    nxt = 0
    for v in cg.vertices:
        for _ in range(cg.w(v)):
            owner[nxt] = v
            nxt += 1
    by_label: dict[CategoryLabel, list[int]] = {}
    for u, v in owner.items():
        by_label.setdefault(v, []).append(u)
    adj = {}
    for u, v in owner.items():
        nb = set()
        for other, us in by_label.items():
            if v.adjacent(other):
                nb.update(us)
        adj[u] = frozenset(nb)
    part = {u: v.home for u, v in owner.items()}
    return UndirectedSIGraph(tuple(range(nxt)), adj, part), owner
