"""Acceptance criteria, one test each. Results are echoed in the terminal summary."""

import itertools
import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import ACCEPTANCE, c5_witness, pair7_instance, random_canonical, random_g2_bounded
from ich.category import build_category_graph, categorize
from ich.codec import MINRANK_MAX_FREE, minrank_bruteforce, simulate_decode, verify_vector_code, verify_xor_code
from ich.instance import Disk, GeometricLayout, enumerate_intersecting_sets, lemma_bound
from ich.sigraph import build_side_info_graph, decompose, find_odd_hole, underlying_undirected
from ich.simbench import TrialConfig, matching_code, run_point, summarize
from ich.vectorcolor import fractional_chromatic_brute, fractional_multicolor, solve_vector
from ich.xorcolor import (
    branch_and_bound,
    brute_clique_cover,
    cached_graver,
    clique_system,
    conformal_decomposition,
    conformal_leq,
    graver_basis,
    greedy_k3,
    independence_number,
    k3_count_formula,
    optintprog,
    solve_xor,
    two_helper_optimum,
)


def record(num, name, ok, detail):
    ACCEPTANCE[num] = (name, bool(ok), detail)
    print(f"criterion {num} {'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, f"criterion {num} ({name}) failed: {detail}"


def k3_corpus():
    rng = random.Random(303)
    return [random_g2_bounded(rng, 3, 15, n_max=20) for _ in range(300)]


def test_criterion_01_two_helper_exactness():
    rng = random.Random(101)
    start = time.perf_counter()
    bad = []
    brute_checked = minrank_checked = 0
    for i in range(500):
        inst = random_canonical(rng, 2, rng.randint(2, 30), rng.uniform(0.05, 0.95))
        h1, h2 = inst.helpers
        formula = len(h1.neighborhood) + len(h2.neighborhood) - min(
            len(h1.neighborhood & h2.cache), len(h2.neighborhood & h1.cache)
        )
        length, code = two_helper_optimum(inst)
        gd = build_side_info_graph(inst)
        if length != formula or not verify_xor_code(code, gd):
            bad.append((i, "formula"))
        if inst.n <= 15:
            dec = decompose(gd)
            brute_checked += 1
            if brute_clique_cover(dec.g2) + len(dec.out_vertices) != length:
                bad.append((i, "brute"))
        if gd.n_edges <= MINRANK_MAX_FREE:
            minrank_checked += 1
            if minrank_bruteforce(gd).value != length:
                bad.append((i, "minrank"))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60 and brute_checked and minrank_checked
    record(1, "k=2 exactness", ok,
           f"500 instances, {brute_checked} brute, {minrank_checked} minrank, mismatches={bad[:5]}, {elapsed:.1f}s")


def test_criterion_02_pair7():
    inst = pair7_instance()
    sol = solve_xor(inst)
    gd = build_side_info_graph(inst)
    pairs = [set(t) for t in sol.code.transmissions if len(t) == 2]
    # in 0-based ids the two-sided users are {1, 2} and {4, 5}
    ok_pairs = len(pairs) == 2 and all(len(p & {1, 2}) == 1 and len(p & {4, 5}) == 1 for p in pairs)
    ok = sol.length == 5 and verify_xor_code(sol.code, gd) and simulate_decode(sol.code, gd) and ok_pairs
    record(2, "two-helper example", ok, f"length={sol.length} transmissions={sol.code.transmissions}")


def test_criterion_03_k3_greedy_optimal():
    start = time.perf_counter()
    cs = clique_system(3)
    gb = cached_graver(3)
    bad = []
    for i, (inst, dec) in enumerate(k3_corpus()):
        cg = categorize(dec, k=3).graph
        greedy = greedy_k3(cg).total
        formula = k3_count_formula(cg)
        ilp = optintprog(cs, cs.weight_vector(cg), gb).objective
        brute = brute_clique_cover(dec.g2)
        if not greedy == formula == ilp == brute:
            bad.append((i, greedy, formula, ilp, brute))
    elapsed = time.perf_counter() - start
    record(3, "k=3 greedy optimality", not bad and elapsed < 300,
           f"300 instances, mismatches={bad[:5]}, {elapsed:.1f}s")


def test_criterion_04_k3_perfect():
    bad = []
    for i, (inst, dec) in enumerate(k3_corpus()):
        g = dec.g2
        if brute_clique_cover(g) != independence_number(g):
            bad.append((i, "cover"))
        if find_odd_hole(g) is not None or find_odd_hole(g, anti=True) is not None:
            bad.append((i, "hole"))
    record(4, "k=3 perfectness", not bad, f"300 instances, violations={bad[:5]}")


def test_criterion_05_skeleton():
    counts = {k: len(build_category_graph(k).vertices) for k in range(2, 9)}
    e2 = len(build_category_graph(2).edges)
    e3 = len(build_category_graph(3).edges)
    ok = counts[2] == 2 and e2 == 1 and counts[3] == 9 and e3 == 12 and all(
        c == k * (2 ** (k - 1) - 1) for k, c in counts.items()
    )
    record(5, "category skeleton", ok, f"vertices={counts} edges k2={e2} k3={e3}")


def test_criterion_06_multicoloring_equivalence():
    rng = random.Random(606)
    bad = []
    for i in range(200):
        k = rng.randint(2, 4)
        inst, dec = random_g2_bounded(rng, k, 15)
        cg = categorize(dec, k=k).graph
        cs = clique_system(k)
        ilp = branch_and_bound(cs, cs.weight_vector(cg)).objective
        if ilp != brute_clique_cover(dec.g2):
            bad.append(i)
    record(6, "multicoloring equivalence", not bad, f"200 instances k<=4, mismatches={bad[:5]}")


def test_criterion_07_graver_path():
    start = time.perf_counter()
    details = []
    ok = True
    rng = np.random.default_rng(707)
    for k in (2, 3):
        cs = clique_system(k)
        gb = graver_basis(cs)
        # completeness spot-checks: random kernel vectors decompose conformally
        single = [j for j, c in enumerate(cs.cliques) if len(c) == 1]
        multi = [j for j, c in enumerate(cs.cliques) if len(c) > 1]
        for _ in range(200):
            v = np.zeros(cs.f2, dtype=np.int64)
            v[multi] = rng.integers(-4, 5, size=len(multi))
            v[single] = -(cs.A[:, multi] @ v[multi])
            used = conformal_decomposition(v, gb)
            if used is None or not all(conformal_leq(gb.elements[i], v) for i in used):
                ok = False
        if (cs.A @ gb.elements.T).any():
            ok = False
        worst = 0.0
        for _ in range(100):
            w = rng.integers(0, 6, size=cs.f1)
            n = int(w.sum())
            res = optintprog(cs, w, gb)
            if n and res.calls > 2 * n * cs.f2:
                ok = False
            if res.objective != branch_and_bound(cs, w).objective:
                ok = False
            if n:
                worst = max(worst, res.calls / (2 * n * cs.f2))
        details.append(f"k={k}: {gb.size} elements, worst calls/budget={worst:.3f}")
    elapsed = time.perf_counter() - start
    record(7, "Graver path", ok and elapsed < 600, "; ".join(details) + f"; {elapsed:.1f}s")


def test_criterion_08_fractional_equivalence():
    rng = random.Random(808)
    bad = []
    for i in range(100):
        k = rng.randint(2, 4)
        inst, dec = random_g2_bounded(rng, k, 12)
        cg = categorize(dec, k=k).graph
        if fractional_multicolor(cg).objective != fractional_chromatic_brute(dec.g2):
            bad.append(i)
    record(8, "fractional equivalence", not bad, f"100 instances k<=4, mismatches={bad[:5]}")


def test_criterion_09_c5_gain():
    inst = c5_witness()
    gd = build_side_info_graph(inst)
    vs = solve_vector(inst)
    xor = solve_xor(inst, "bnb").length
    mr = minrank_bruteforce(gd).value
    ok = (
        vs.rate == Fraction(5, 2) and xor == 3 and mr == 3
        and vs.code.t == 5 and vs.code.p == 2
        and verify_vector_code(vs.code, gd) and simulate_decode(vs.code, gd)
    )
    record(9, "k=4 fractional gain witness", ok, f"vector={vs.rate} (t={vs.code.t}, p={vs.code.p}) xor={xor} minrank={mr}")


def test_criterion_10_simulation():
    start = time.perf_counter()
    cfg = TrialConfig(5, 120, library_size=1400, zipf_s=0.5, cache_size=450, trials=20, seed=7)
    results = run_point(cfg)
    s = summarize(results)
    ordered = all(r.ordered() for r in results)
    k8 = run_point(TrialConfig(8, 75, library_size=1400, zipf_s=0.5, cache_size=450, trials=2, seed=7))
    k8_ok = all(r.matching is not None and r.vector is None and r.notes for r in k8)
    elapsed = time.perf_counter() - start
    gain = float(s.gain)
    ok = 1.9 <= gain <= 2.9 and ordered and k8_ok and elapsed < 600
    record(10, "simulation reproduction", ok,
           f"k=5 mean gain={gain:.4f} (target [1.9, 2.9]); means naive={float(s.naive):.1f} "
           f"matching={float(s.matching):.2f} xor={float(s.xor):.2f} vector={float(s.vector):.2f}; "
           f"ordering holds={ordered}; k=8 matching={[r.matching for r in k8]} vector=n/a; {elapsed:.1f}s")


def test_criterion_11_code_validity():
    rng = random.Random(1111)
    bad = []
    codes = 0
    for i in range(1000):
        k = rng.randint(2, 5)
        inst = random_canonical(rng, k, rng.randint(k, 18), rng.uniform(0.0, 1.0), uncovered=rng.choice([0.0, 0.1]))
        gd = build_side_info_graph(inst)
        emitted = [("matching", matching_code(underlying_undirected(gd))), ("xor", solve_xor(inst).code),
                   ("vector", solve_vector(inst).code)]
        if k == 2:
            emitted.append(("k2", two_helper_optimum(inst)[1]))
        if k <= 4 and len(decompose(gd).g2) <= 12:
            emitted.append(("bnb", solve_xor(inst, "bnb").code))
        for name, code in emitted:
            codes += 1
            verify = verify_vector_code if name == "vector" else verify_xor_code
            if not verify(code, gd) or not simulate_decode(code, gd, trials=100, seed=i):
                bad.append((i, name))
    record(11, "code validity", not bad, f"1000 instances, {codes} codes, failures={bad[:5]}")


def random_layout(rng, k, d):
    """Random disks, resampled until no point lies in more than d of them."""
    while True:
        disks = tuple(
            Disk((rng.uniform(0, 10), rng.uniform(0, 10)), rng.uniform(0.5, 2.0)) for _ in range(k)
        )
        fam = enumerate_intersecting_sets(GeometricLayout(disks, (), d))
        if fam.max_depth <= d:
            return GeometricLayout(disks, (), d), fam


def grid_family(disks, step):
    xs = [d.center[0] for d in disks]
    ys = [d.center[1] for d in disks]
    r = max(d.radius for d in disks)
    gx = np.arange(min(xs) - r - step, max(xs) + r + step, step)
    gy = np.arange(min(ys) - r - step, max(ys) + r + step, step)
    px, py = np.meshgrid(gx, gy)
    inside = np.stack([(px - d.center[0]) ** 2 + (py - d.center[1]) ** 2 <= d.radius ** 2 for d in disks])
    fam = set()
    for code in set(map(tuple, inside.reshape(len(disks), -1).T.tolist())):
        members = [i for i, b in enumerate(code) if b]
        for r_ in range(1, len(members) + 1):
            fam.update(frozenset(c) for c in itertools.combinations(members, r_))
    return fam


def boundary_case(disks, subset, margin):
    """True when the disks of ``subset`` no longer meet once shrunk by ``margin``."""
    shrunk = tuple(Disk(disks[i].center, disks[i].radius - margin) for i in sorted(subset))
    if any(d.radius <= 0 for d in shrunk):
        return True
    fam = enumerate_intersecting_sets(GeometricLayout(shrunk, (), len(shrunk)))
    return frozenset(range(len(shrunk))) not in fam.sets


def test_criterion_12_lemma_bound():
    rng = random.Random(1212)
    over = []
    for i in range(200):
        d = rng.randint(1, 3)
        k = rng.randint(1, 12)
        layout, fam = random_layout(rng, k, d)
        if fam.size > lemma_bound(d, k) or not fam.within_bound:
            over.append(i)
    step = 0.02
    margin = step * math.sqrt(2)
    spurious = []
    boundary = 0
    for i in range(50):
        layout, fam = random_layout(rng, rng.randint(2, 8), 3)
        grid = grid_family(layout.disks, step)
        if grid - fam.sets:
            spurious.append(i)
        for s in fam.sets - grid:
            if boundary_case(layout.disks, s, margin):
                boundary += 1
            else:
                spurious.append(i)
    ok = not over and not spurious
    record(12, "intersection bound", ok,
           f"200 layouts within bound (violations={over[:5]}); 50 grid checks, "
           f"{boundary} boundary-only differences, disagreements={spurious[:5]}")
