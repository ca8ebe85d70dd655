"""Side-information graphs, the out-component decomposition and structural checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .instance import CanonicalInstance

ODD_HOLE_MAX_VERTICES = 40


@dataclass(frozen=True)
class DirectedSIGraph:
    """Edge ``(i, j)`` means user ``i`` holds packet ``x_j``.

    ``out[i]`` is the out-neighborhood N(i); ``partition[i]`` is the helper
    user ``i`` hangs off (``None`` when uncovered).
    """

    n: int
    out: tuple[frozenset[int], ...]
    partition: tuple[int | None, ...]
    k: int = 0

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in sorted(self.out[i])]

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.out[i]

    @property
    def n_edges(self) -> int:
        return sum(len(o) for o in self.out)


@dataclass(frozen=True)
class UndirectedSIGraph:
    vertices: tuple[int, ...]
    adj: Mapping[int, frozenset[int]]
    partition: Mapping[int, int] | None = None

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.vertices for v in sorted(self.adj[u]) if u < v]

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def is_clique(self, members: Iterable[int]) -> bool:
        ms = list(members)
        return all(b in self.adj[a] for i, a in enumerate(ms) for b in ms[i + 1:])

    def complement(self) -> "UndirectedSIGraph":
        vs = frozenset(self.vertices)
        adj = {u: vs - self.adj[u] - {u} for u in self.vertices}
        return UndirectedSIGraph(self.vertices, adj, self.partition)

    def induced(self, keep: Iterable[int]) -> "UndirectedSIGraph":
        ks = frozenset(keep)
        vs = tuple(v for v in self.vertices if v in ks)
        part = None if self.partition is None else {v: self.partition[v] for v in vs}
        return UndirectedSIGraph(vs, {v: self.adj[v] & ks for v in vs}, part)


def undirected_from_edges(vertices: Iterable[int], edges: Iterable[tuple[int, int]], partition=None) -> UndirectedSIGraph:
    vs = tuple(sorted(vertices))
    adj: dict[int, set[int]] = {v: set() for v in vs}
    for a, b in edges:
        if a == b:
            continue
        adj[a].add(b)
        adj[b].add(a)
    return UndirectedSIGraph(vs, {v: frozenset(s) for v, s in adj.items()}, partition)


@dataclass(frozen=True)
class Decomposition:
    """Split of the side-information graph into edgeless G1 and structured G2.

    ``out_vertices`` are the users with no bidirectional edge; they are served
    uncoded. ``g2`` is the undirected graph on the rest, ``g2_directed`` its
    directed edges, ``removed`` the directed edges touching ``out_vertices``.
    """

    n: int
    k: int
    out_vertices: frozenset[int]
    g2: UndirectedSIGraph
    g2_directed: frozenset[tuple[int, int]]
    removed: frozenset[tuple[int, int]]

    @property
    def sinks_clean(self) -> bool:
        """True when no directed edge enters an out-vertex.

        Then G1 is edgeless and only sends edges into G2, so the minrank
        splits as ``|out| + minrank(G2)``. Degree-0 leftovers folded into the
        out-vertices can break this (they may hold one another's packets).
        """
        return not any(b in self.out_vertices for _, b in self.removed)


def build_side_info_graph(canon: CanonicalInstance) -> DirectedSIGraph:
    home = canon.home()
    out = []
    for i in range(canon.n):
        j = home[i]
        out.append(frozenset() if j is None else frozenset(canon.helpers[j].cache) - {i})
    return DirectedSIGraph(canon.n, tuple(out), tuple(home), canon.k)


def underlying_undirected(gd: DirectedSIGraph) -> UndirectedSIGraph:
    """Keep exactly the 2-cycles of ``gd`` as undirected edges."""
    adj = {
        i: frozenset(j for j in gd.out[i] if i in gd.out[j])
        for i in range(gd.n)
    }
    part = {i: p for i, p in enumerate(gd.partition) if p is not None}
    return UndirectedSIGraph(tuple(range(gd.n)), adj, part)


def decompose(gd: DirectedSIGraph, partitions: Mapping[int, int] | None = None) -> Decomposition:
    """Split off users that take part in no bidirectional edge.

    Users whose packet is cached nowhere have no incoming edge at all; users
    left with degree 0 in the undirected graph are folded in as well since
    they cannot share a transmission.
    """
    und = underlying_undirected(gd)
    if partitions is None:
        partitions = und.partition or {}
    out = frozenset(v for v in und.vertices if und.degree(v) == 0)
    keep = [v for v in und.vertices if v not in out]
    missing = [v for v in keep if v not in partitions]
    if missing:
        raise ValueError(f"vertices without partition label: {missing}")
    g2 = UndirectedSIGraph(
        tuple(keep),
        {v: und.adj[v] for v in keep},
        {v: partitions[v] for v in keep},
    )
    directed = frozenset((i, j) for i in keep for j in gd.out[i] if j not in out)
    removed = frozenset((i, j) for i, j in gd.edges() if i in out or j in out)
    return Decomposition(gd.n, gd.k, out, g2, directed, removed)


def check_complete_bipartite_structure(dec: Decomposition | UndirectedSIGraph) -> bool:
    """Every partition pair induces a complete bipartite graph plus isolated vertices.

    Within a pair (i, j) the vertices of partition i with a neighbor in j must
    be joined to every vertex of partition j with a neighbor in i, and no edge
    may join two vertices of the same partition.
    """
    g = dec.g2 if isinstance(dec, Decomposition) else dec
    part = g.partition
    if part is None:
        return False
    touching: dict[tuple[int, int], set[int]] = {}
    for u in g.vertices:
        for v in g.adj[u]:
            if part[u] == part[v]:
                return False
            touching.setdefault((part[u], part[v]), set()).add(u)
    for (i, j), side in touching.items():
        other = touching.get((j, i), set())
        for u in side:
            nbrs_in_j = {v for v in g.adj[u] if part[v] == j}
            if nbrs_in_j != other:
                return False
    return True


def find_odd_hole(
    g: UndirectedSIGraph,
    max_len: int | None = None,
    anti: bool = False,
) -> list[int] | None:
    """Return an induced odd cycle of length >= 5 (or an odd anti-hole's cycle).

    Exhaustive DFS over induced paths; meant for graphs of at most 40 vertices.
    With ``anti=True`` the search runs on the complement, so a returned cycle
    is an odd hole of the complement, i.e. an odd anti-hole of ``g``.
    """
    if len(g) > ODD_HOLE_MAX_VERTICES:
        raise ValueError(f"odd-hole search limited to {ODD_HOLE_MAX_VERTICES} vertices, got {len(g)}")
    h = g.complement() if anti else g
    if max_len is None:
        max_len = len(h)
    adj = h.adj
    order = sorted(h.vertices)

    def extend(path: list[int], on_path: set[int]) -> list[int] | None:
        start, last = path[0], path[-1]
        inner = path[1:-1]
        for x in sorted(adj[last]):
            if x <= start or x in on_path:
                continue
            if any(x in adj[v] for v in inner):
                continue
            if start in adj[x]:
                length = len(path) + 1
                if length >= 5 and length % 2 == 1:
                    return path + [x]
                continue
            if len(path) + 1 < max_len:
                path.append(x)
                on_path.add(x)
                found = extend(path, on_path)
                if found:
                    return found
                path.pop()
                on_path.discard(x)
        return None

    for s in order:
        for a in sorted(adj[s]):
            if a <= s:
                continue
            found = extend([s, a], {s, a})
            if found:
                return found
    return None


def dump_edges(g: DirectedSIGraph | UndirectedSIGraph) -> str:
    """Edge-list text: ``i -> j`` for directed, ``i -- j`` for undirected graphs."""
    if isinstance(g, DirectedSIGraph):
        lines = [f"{i} -> {j}" for i, j in g.edges()]
    else:
        lines = [f"{u} -- {v}" for u, v in g.edges()]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_edges(text: str):
    """Inverse of :func:`dump_edges`; returns ``(kind, edges)``."""
    directed, undirected = [], []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "->" in line:
            a, b = line.split("->")
            directed.append((int(a), int(b)))
        elif "--" in line:
            a, b = line.split("--")
            undirected.append((int(a), int(b)))
        else:
            raise ValueError(f"bad edge line: {line!r}")
    if directed and undirected:
        raise ValueError("mixed directed and undirected edges")
    return ("directed", directed) if directed else ("undirected", undirected)
