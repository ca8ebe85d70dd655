"""Problem instances: helper networks, canonical form, generators and JSON I/O.

Users are 0-based integers and packet id ``i`` is the packet requested by
user ``i`` unless a network carries an explicit ``requests`` tuple (library
file ids), in which case caches are expressed in the same file-id space.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

TANGENCY_TOL = 1e-9


@dataclass(frozen=True)
class Helper:
    cache: frozenset[int]
    neighborhood: frozenset[int]


@dataclass(frozen=True)
class HelperNetwork:
    """A raw index-coding-with-helpers instance (helpers may overlap)."""

    n: int
    helpers: tuple[Helper, ...]
    requests: tuple[int, ...] | None = None
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def k(self) -> int:
        return len(self.helpers)

    def request(self, user: int) -> int:
        return user if self.requests is None else self.requests[user]

    def connected(self, user: int) -> frozenset[int]:
        """Indices of the helpers whose range contains ``user``."""
        return frozenset(j for j, h in enumerate(self.helpers) if user in h.neighborhood)

    def cached_users(self, j: int) -> frozenset[int]:
        """Users whose requested packet sits in helper ``j``'s cache."""
        cache = self.helpers[j].cache
        return frozenset(u for u in range(self.n) if self.request(u) in cache)


@dataclass(frozen=True)
class CanonicalInstance:
    """Disjoint-neighborhood instance; caches are sets of user ids.

    ``provenance[j]`` lists the original helper subsets merged into virtual
    helper ``j``. Users in no neighborhood are kept in ``uncovered``.
    """

    n: int
    helpers: tuple[Helper, ...]
    provenance: tuple[tuple[frozenset[int], ...], ...] = ()
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def k(self) -> int:
        return len(self.helpers)

    @property
    def uncovered(self) -> frozenset[int]:
        covered = set()
        for h in self.helpers:
            covered |= h.neighborhood
        return frozenset(range(self.n)) - covered

    def home(self) -> list[int | None]:
        """Helper index of every user (``None`` if uncovered)."""
        out: list[int | None] = [None] * self.n
        for j, h in enumerate(self.helpers):
            for u in h.neighborhood:
                out[u] = j
        return out

    def side_information(self, user: int) -> frozenset[int]:
        j = self.home()[user]
        return frozenset() if j is None else self.helpers[j].cache

    def to_network(self) -> HelperNetwork:
        return HelperNetwork(self.n, self.helpers, meta=dict(self.meta))


@dataclass(frozen=True)
class ValidationReport:
    cache_hits: tuple[tuple[int, int], ...] = ()
    duplicate_requests: tuple[int, ...] = ()
    bad_users: tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        return not (self.cache_hits or self.duplicate_requests or self.bad_users)

    def __len__(self) -> int:
        return len(self.cache_hits) + len(self.duplicate_requests) + len(self.bad_users)


@dataclass(frozen=True)
class Disk:
    center: tuple[float, float]
    radius: float


@dataclass(frozen=True)
class GeometricLayout:
    disks: tuple[Disk, ...]
    users: tuple[tuple[float, float], ...]
    d_ply: int = 1


@dataclass(frozen=True)
class IntersectionFamily:
    sets: frozenset[frozenset[int]]
    size: int
    bound: int
    within_bound: bool
    max_depth: int


def make_network(n: int, helpers: Iterable[tuple[Iterable[int], Iterable[int]]], **kw) -> HelperNetwork:
    """Build a network from ``(cache, neighborhood)`` pairs."""
    hs = tuple(Helper(frozenset(c), frozenset(nb)) for c, nb in helpers)
    return HelperNetwork(n, hs, **kw)


def validate_ich(net: HelperNetwork) -> ValidationReport:
    """List every violation of the cache-miss condition and duplicate requests."""
    hits = []
    bad = set()
    for j, h in enumerate(net.helpers):
        for u in sorted(h.neighborhood):
            if not 0 <= u < net.n:
                bad.add(u)
            elif net.request(u) in h.cache:
                hits.append((u, j))
    dups: tuple[int, ...] = ()
    if net.requests is not None:
        if len(net.requests) != net.n:
            bad.update(range(min(len(net.requests), net.n), max(len(net.requests), net.n)))
        seen: dict[int, int] = {}
        for r in net.requests:
            seen[r] = seen.get(r, 0) + 1
        dups = tuple(sorted(r for r, c in seen.items() if c > 1))
    return ValidationReport(tuple(sorted(hits)), dups, tuple(sorted(bad)))


def union_expansion(net: HelperNetwork) -> CanonicalInstance:
    """Reduce an ICH instance to canonical form.

    Every user is attached to one virtual helper indexed by its exact set of
    connected helpers; the virtual cache is the union of those caches.
    Virtual helpers with identical caches are merged.
    """
    report = validate_ich(net)
    if not report.ok:
        raise ValueError(f"invalid ICH instance: {report}")
    cached = [net.cached_users(j) for j in range(net.k)]
    groups: dict[frozenset[int], set[int]] = {}
    for u in range(net.n):
        m = net.connected(u)
        if m:
            groups.setdefault(m, set()).add(u)
    by_cache: dict[frozenset[int], tuple[set[int], list[frozenset[int]]]] = {}
    for m in sorted(groups, key=lambda s: (min(s), sorted(s))):
        cache = frozenset().union(*(cached[j] for j in m))
        users, origins = by_cache.setdefault(cache, (set(), []))
        users |= groups[m]
        origins.append(m)
    helpers = []
    prov = []
    for cache, (users, origins) in by_cache.items():
        helpers.append(Helper(cache, frozenset(users)))
        prov.append(tuple(origins))
    return CanonicalInstance(net.n, tuple(helpers), tuple(prov), meta=dict(net.meta))


def is_canonical(inst: CanonicalInstance) -> bool:
    seen: set[int] = set()
    caches = set()
    for h in inst.helpers:
        if h.neighborhood & seen or h.neighborhood & h.cache or h.cache in caches:
            return False
        seen |= h.neighborhood
        caches.add(h.cache)
    return True


# --- geometry -----------------------------------------------------------------


def geometric_instance(layout: GeometricLayout, caches: Sequence[Iterable[int]]) -> HelperNetwork:
    """Connect user i to helper j iff it lies in disk j (boundary included)."""
    if len(caches) != len(layout.disks):
        raise ValueError("one cache per helper disk is required")
    for d in layout.disks:
        if d.radius < 0:
            raise ValueError(f"negative radius {d.radius}")
    helpers = []
    for d, cache in zip(layout.disks, caches):
        nb = frozenset(
            u for u, pt in enumerate(layout.users)
            if math.dist(pt, d.center) <= d.radius
        )
        helpers.append(Helper(frozenset(cache), nb))
    return HelperNetwork(len(layout.users), tuple(helpers))


def circle_intersections(a: Disk, b: Disk, tol: float = TANGENCY_TOL) -> list[tuple[float, float]]:
    """Boundary intersection points of two circles (tangency within ``tol``)."""
    (x0, y0), r0 = a.center, a.radius
    (x1, y1), r1 = b.center, b.radius
    dx, dy = x1 - x0, y1 - y0
    dist = math.hypot(dx, dy)
    if dist == 0.0:
        return []
    if dist > r0 + r1 + tol or dist < abs(r0 - r1) - tol:
        return []
    along = (r0 * r0 - r1 * r1 + dist * dist) / (2 * dist)
    h = math.sqrt(max(r0 * r0 - along * along, 0.0))
    mx, my = x0 + along * dx / dist, y0 + along * dy / dist
    if h == 0.0:
        return [(mx, my)]
    ox, oy = -dy * h / dist, dx * h / dist
    return [(mx + ox, my + oy), (mx - ox, my - oy)]


def _covering(disks: Sequence[Disk], pt: tuple[float, float], tol: float) -> frozenset[int]:
    return frozenset(j for j, d in enumerate(disks) if math.dist(pt, d.center) <= d.radius + tol)


def candidate_points(disks: Sequence[Disk], tol: float = TANGENCY_TOL) -> list[tuple[float, float]]:
    pts = [d.center for d in disks]
    for a, b in itertools.combinations(disks, 2):
        pts.extend(circle_intersections(a, b, tol))
    return pts


def lemma_bound(d: int, k: int) -> int:
    """Upper bound d * C(9d, d-1) * k on the number of intersecting disk subsets."""
    return d * math.comb(9 * d, d - 1) * k


def enumerate_intersecting_sets(layout: GeometricLayout, tol: float = TANGENCY_TOL) -> IntersectionFamily:
    """All helper subsets whose disks share a point, plus the ply bound check.

    A nonempty common intersection contains a pairwise boundary intersection
    point or the center of a disk lying inside all the others, so testing
    those candidate points is exhaustive.
    """
    disks = layout.disks
    maximal: set[frozenset[int]] = set()
    for pt in candidate_points(disks, tol):
        cover = _covering(disks, pt, tol)
        if cover:
            maximal.add(cover)
    family: set[frozenset[int]] = set()
    for s in maximal:
        items = sorted(s)
        for r in range(1, len(items) + 1):
            family.update(frozenset(c) for c in itertools.combinations(items, r))
    depth = max((len(s) for s in maximal), default=0)
    bound = lemma_bound(layout.d_ply, len(disks))
    return IntersectionFamily(frozenset(family), len(family), bound, len(family) <= bound, depth)


# --- Zipf generator -------------------------------------------------------------


def zipf_pmf(library_size: int, s: float) -> np.ndarray:
    ranks = np.arange(1, library_size + 1, dtype=float)
    w = ranks ** (-s)
    return w / w.sum()


def zipf_instance(
    library_size: int,
    zipf_s: float,
    k: int,
    users_per_helper: int,
    cache_size: int,
    seed: int | None = None,
) -> CanonicalInstance:
    """Random canonical instance with Zipf-distributed caches and requests.

    Helper ``j`` serves users ``j*U .. (j+1)*U - 1``. Each cache holds
    ``cache_size`` distinct files drawn by repeated Zipf sampling. Each
    request is a Zipf draw conditioned on missing the user's own helper and
    on differing from every earlier request.
    """
    if cache_size > library_size or cache_size < 0:
        raise ValueError("cache_size must lie in [0, library_size]")
    if zipf_s < 0:
        raise ValueError("zipf_s must be nonnegative")
    n = k * users_per_helper
    if library_size - cache_size < users_per_helper or n > library_size:
        raise ValueError("distinct cache-missing requests are impossible for these parameters")
    rng = np.random.default_rng(seed)
    pmf = zipf_pmf(library_size, zipf_s)
    caches = []
    for _ in range(k):
        if cache_size:
            caches.append(frozenset(int(f) for f in rng.choice(library_size, size=cache_size, replace=False, p=pmf)))
        else:
            caches.append(frozenset())
    taken = np.zeros(library_size, dtype=bool)
    requests = []
    for j in range(k):
        blocked = taken.copy()
        blocked[list(caches[j])] = True
        for _ in range(users_per_helper):
            avail = np.where(blocked, 0.0, pmf)
            total = avail.sum()
            if total <= 0:
                raise ValueError("ran out of distinct cache-missing files")
            f = int(rng.choice(library_size, p=avail / total))
            requests.append(f)
            taken[f] = True
            blocked[f] = True
    net = HelperNetwork(
        n,
        tuple(
            Helper(caches[j], frozenset(range(j * users_per_helper, (j + 1) * users_per_helper)))
            for j in range(k)
        ),
        requests=tuple(requests),
        meta={"seed": seed, "source": f"zipf(L={library_size}, s={zipf_s}, k={k}, U={users_per_helper}, M={cache_size})"},
    )
    canon = union_expansion(net)
    meta = dict(canon.meta)
    meta["requests"] = list(requests)
    return CanonicalInstance(canon.n, canon.helpers, canon.provenance, meta)


# --- JSON I/O -------------------------------------------------------------------


def to_json_dict(inst: HelperNetwork | CanonicalInstance) -> dict:
    """Instance as the user-id JSON document (caches mapped to user ids)."""
    if isinstance(inst, HelperNetwork) and inst.requests is not None:
        caches = [sorted(inst.cached_users(j)) for j in range(inst.k)]
    else:
        caches = [sorted(h.cache) for h in inst.helpers]
    meta = {"seed": inst.meta.get("seed"), "source": inst.meta.get("source", "")}
    meta.update({k: v for k, v in inst.meta.items() if k not in meta})
    return {
        "n": inst.n,
        "helpers": [
            {"cache": c, "neighborhood": sorted(h.neighborhood)}
            for c, h in zip(caches, inst.helpers)
        ],
        "meta": meta,
    }


def from_json_dict(doc: dict) -> HelperNetwork:
    helpers = tuple(
        Helper(frozenset(int(x) for x in h.get("cache", [])), frozenset(int(x) for x in h.get("neighborhood", [])))
        for h in doc["helpers"]
    )
    meta = dict(doc.get("meta") or {})
    return HelperNetwork(int(doc["n"]), helpers, meta=meta)


def dump_instance(inst: HelperNetwork | CanonicalInstance, path) -> None:
    with open(path, "w") as fh:
        json.dump(to_json_dict(inst), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_instance(path) -> HelperNetwork:
    with open(path) as fh:
        return from_json_dict(json.load(fh))


def load_canonical(path) -> CanonicalInstance:
    """Load a JSON instance and reduce it (a no-op on canonical input)."""
    return union_expansion(load_instance(path))


def dump_layout(layout: GeometricLayout, path, caches=None) -> None:
    doc = {
        "helpers": [{"center": list(d.center), "radius": d.radius} for d in layout.disks],
        "users": [list(p) for p in layout.users],
        "d_ply": layout.d_ply,
    }
    if caches is not None:
        doc["caches"] = [sorted(c) for c in caches]
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1)


def load_layout(path) -> tuple[GeometricLayout, list[list[int]] | None]:
    with open(path) as fh:
        doc = json.load(fh)
    disks = tuple(Disk(tuple(h["center"]), float(h["radius"])) for h in doc["helpers"])
    users = tuple(tuple(p) for p in doc.get("users", []))
    return GeometricLayout(disks, users, int(doc.get("d_ply", 1))), doc.get("caches")
