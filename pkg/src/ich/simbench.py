"""Benchmark harness: Zipf instances, scheme comparison, sweeps and CSV output."""

from __future__ import annotations

import csv
import io
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .codec import BudgetExceeded, XorCode, simulate_decode, verify_vector_code, verify_xor_code
from .instance import zipf_instance
from .sigraph import UndirectedSIGraph, build_side_info_graph, underlying_undirected
from .vectorcolor import solve_vector
from .xorcolor import solve_xor

ALL_METHODS = ("matching", "xor", "vector")
CSV_COLUMNS = (
    "k", "n", "library", "zipf_s", "cache", "trial",
    "naive", "matching", "xor", "vector_num", "vector_den", "gain",
)
NA = "n/a"


def greedy_matching(g: UndirectedSIGraph) -> list[tuple[int, int]]:
    """Maximal matching from one pass over edges in lexicographic order."""
    used: set[int] = set()
    out = []
    for a, b in sorted(g.edges()):
        if a not in used and b not in used:
            used.update((a, b))
            out.append((a, b))
    return out


def matching_code(g: UndirectedSIGraph) -> XorCode:
    """Pairs of the greedy matching XORed, everyone else sent uncoded."""
    pairs = greedy_matching(g)
    matched = {u for e in pairs for u in e}
    txs = list(pairs) + [(u,) for u in g.vertices if u not in matched]
    return XorCode(len(g.vertices), tuple(txs))


@dataclass(frozen=True)
class TrialConfig:
    k: int
    users_per_helper: int
    library_size: int = 1400
    zipf_s: float = 0.5
    cache_size: int = 450
    trials: int = 20
    seed: int = 0
    methods: tuple[str, ...] = ALL_METHODS
    payload_trials: int = 1

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        bad = set(self.methods) - set(ALL_METHODS)
        if bad:
            raise ValueError(f"unknown methods {sorted(bad)}")

    @property
    def n(self) -> int:
        return self.k * self.users_per_helper


@dataclass(frozen=True)
class TrialResult:
    k: int
    n: int
    library: int
    zipf_s: float
    cache: int
    trial: int
    naive: int
    matching: int | None
    xor: int | None
    vector: Fraction | None
    notes: tuple[str, ...] = field(default=())

    @property
    def gain(self) -> Fraction | None:
        return Fraction(self.naive) / self.vector if self.vector else None

    def ordered(self) -> bool:
        chain = [v for v in (self.vector, self.xor, self.matching, self.naive) if v is not None]
        return all(a <= b for a, b in zip(chain, chain[1:]))


def run_trial(cfg: TrialConfig, trial_index: int) -> TrialResult:
    """One random instance, every enabled scheme, every code verified."""
    inst = zipf_instance(
        cfg.library_size, cfg.zipf_s, cfg.k, cfg.users_per_helper, cfg.cache_size,
        seed=cfg.seed ^ trial_index,
    )
    gd = build_side_info_graph(inst)
    g = underlying_undirected(gd)
    notes = []

    def check(code, verify) -> None:
        if not verify(code, gd) or not simulate_decode(code, gd, trials=cfg.payload_trials, seed=trial_index):
            raise AssertionError(f"invalid code emitted in trial {trial_index}")

    matching = xor = vector = None
    if "matching" in cfg.methods:
        code = matching_code(g)
        check(code, verify_xor_code)
        matching = code.t
    if "xor" in cfg.methods:
        try:
            sol = solve_xor(inst)
            check(sol.code, verify_xor_code)
            xor = sol.length
        except BudgetExceeded as exc:
            notes.append(f"xor: {exc}")
    if "vector" in cfg.methods:
        try:
            vs = solve_vector(inst)
            check(vs.code, verify_vector_code)
            vector = vs.rate
        except BudgetExceeded as exc:
            notes.append(f"vector: {exc}")
    res = TrialResult(
        cfg.k, cfg.n, cfg.library_size, cfg.zipf_s, cfg.cache_size, trial_index,
        inst.n, matching, xor, vector, tuple(notes),
    )
    if not res.ordered():
        raise AssertionError(f"ordering vector <= xor <= matching <= naive broken: {res}")
    return res


def _fmt(x) -> str:
    if x is None:
        return NA
    if isinstance(x, Fraction):
        return f"{float(x):.6f}"
    return str(x)


def _row(res: TrialResult) -> dict[str, str]:
    v = res.vector
    return {
        "k": str(res.k), "n": str(res.n), "library": str(res.library),
        "zipf_s": str(res.zipf_s), "cache": str(res.cache), "trial": str(res.trial),
        "naive": str(res.naive), "matching": _fmt(res.matching), "xor": _fmt(res.xor),
        "vector_num": NA if v is None else str(v.numerator),
        "vector_den": NA if v is None else str(v.denominator),
        "gain": _fmt(res.gain),
    }


@dataclass(frozen=True)
class PointSummary:
    """Means over the trials of one configuration."""

    k: int
    n: int
    library: int
    zipf_s: float
    cache: int
    trials: int
    naive: Fraction
    matching: Fraction | None
    xor: Fraction | None
    vector: Fraction | None

    @property
    def gain(self) -> Fraction | None:
        # ratio of means, not mean of ratios
        return self.naive / self.vector if self.vector else None


def summarize(results: Sequence[TrialResult]) -> PointSummary:
    first = results[0]

    def mean(attr: str) -> Fraction | None:
        vals = [getattr(r, attr) for r in results]
        if any(v is None for v in vals):
            return None
        return Fraction(sum(Fraction(v) for v in vals)) / len(vals)

    return PointSummary(
        first.k, first.n, first.library, first.zipf_s, first.cache, len(results),
        mean("naive"), mean("matching"), mean("xor"), mean("vector"),
    )


def _mean_row(s: PointSummary) -> dict[str, str]:
    v = s.vector
    return {
        "k": str(s.k), "n": str(s.n), "library": str(s.library),
        "zipf_s": str(s.zipf_s), "cache": str(s.cache), "trial": "mean",
        "naive": _fmt(s.naive), "matching": _fmt(s.matching), "xor": _fmt(s.xor),
        "vector_num": NA if v is None else str(v.numerator),
        "vector_den": NA if v is None else str(v.denominator),
        "gain": _fmt(s.gain),
    }


def _run_job(job: tuple[TrialConfig, int]) -> TrialResult:
    return run_trial(*job)


def run_point(cfg: TrialConfig, jobs: int = 1) -> list[TrialResult]:
    work = [(cfg, i) for i in range(cfg.trials)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(_run_job, work))
    return [_run_job(w) for w in work]


@dataclass
class SweepResult:
    points: list[tuple[TrialConfig, list[TrialResult]]]

    def summaries(self) -> list[PointSummary]:
        return [summarize(rs) for _, rs in self.points]

    def rows(self) -> list[dict[str, str]]:
        out = []
        for _, rs in self.points:
            out.extend(_row(r) for r in rs)
            out.append(_mean_row(summarize(rs)))
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(self.rows())
        return buf.getvalue()

    def plot_data(self) -> str:
        """Tab-separated means per (k, cache), one line each."""
        lines = ["k\tcache\tnaive\tmatching\txor\tvector\tgain"]
        for s in self.summaries():
            vals = [s.naive, s.matching, s.xor, s.vector, s.gain]
            lines.append("\t".join([str(s.k), str(s.cache)] + [_fmt(v) for v in vals]))
        return "\n".join(lines) + "\n"

    def notes(self) -> list[str]:
        seen = []
        for _, rs in self.points:
            for r in rs:
                for note in r.notes:
                    line = f"k={r.k} cache={r.cache}: {note}"
                    if line not in seen:
                        seen.append(line)
        return seen


def sweep(
    base: TrialConfig,
    k_values: Iterable[int],
    cache_values: Iterable[int],
    users_per_helper: int | None = None,
    jobs: int = 1,
) -> SweepResult:
    """Cross product of helper counts and cache sizes, ordered by (k, cache, trial).

    With ``users_per_helper`` unset, each k gets ``base.n // k`` users per helper
    so the total user count stays fixed.
    """
    total = base.n
    points = []
    for k, cache in itertools.product(list(k_values), list(cache_values)):
        u = users_per_helper or total // k
        cfg = replace(base, k=k, users_per_helper=u, cache_size=cache)
        points.append((cfg, run_point(cfg, jobs)))
    return SweepResult(points)


def parse_range(text: str) -> list[int]:
    """``"a:b:s"`` (inclusive), ``"a,b,c"`` or a single integer."""
    if ":" in text:
        parts = [int(x) for x in text.split(":")]
        if len(parts) == 2:
            parts.append(1)
        lo, hi, step = parts
        if step <= 0:
            raise ValueError("range step must be positive")
        return list(range(lo, hi + 1, step))
    return [int(x) for x in text.split(",") if x.strip()]
