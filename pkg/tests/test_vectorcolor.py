import itertools
import random
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from conftest import c5_witness, pair7_instance, random_canonical, random_g2_bounded
from ich.category import build_category_graph, categorize, label
from ich.codec import simulate_decode, verify_vector_code
from ich.instance import CanonicalInstance, Helper
from ich.sigraph import build_side_info_graph, decompose, undirected_from_edges
from ich.vectorcolor import (
    LPInfeasible,
    fractional_chromatic_brute,
    fractional_multicolor,
    maximal_cliques,
    maximal_cliques_graph,
    reallocate_colors,
    solve_covering,
    solve_vector,
)
from ich.xorcolor import branch_and_bound, brute_clique_cover, clique_system, solve_xor


def to_nx(g):
    h = nx.Graph(g.edges())
    h.add_nodes_from(g.vertices)
    return h


def skeleton_nx(k):
    cg = build_category_graph(k)
    h = nx.Graph()
    h.add_nodes_from(cg.vertices)
    for u, v in itertools.combinations(cg.vertices, 2):
        if u.home in v.connected and v.home in u.connected:
            h.add_edge(u, v)
    return h


def check_code(inst, vs):
    gd = build_side_info_graph(inst)
    assert verify_vector_code(vs.code, gd)
    assert simulate_decode(vs.code, gd, trials=10)


# --- maximal cliques ---------------------------------------------------------


def test_maximal_cliques_match_networkx_random():
    rng = random.Random(6)
    for _ in range(60):
        n = rng.randint(0, 12)
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5]
        g = undirected_from_edges(range(n), edges)
        ours = {frozenset(c) for c in maximal_cliques_graph(g)}
        ref = {frozenset(c) for c in nx.find_cliques(to_nx(g))} if n else set()
        assert ours == ref


@pytest.mark.parametrize("k,count", [(2, 1), (3, 10), (4, 83)])
def test_category_maximal_cliques(k, count):
    ours = {frozenset(c) for c in maximal_cliques(k)}
    ref = {frozenset(c) for c in nx.find_cliques(skeleton_nx(k))}
    assert ours == ref and len(ours) == count


def test_k3_cliques_include_triangle():
    tri = frozenset({label(0, 1, 2), label(1, 0, 2), label(2, 0, 1)})
    assert tri in {frozenset(c) for c in maximal_cliques(3)}


# --- simplex -----------------------------------------------------------------


def test_simplex_matches_linprog():
    rng = np.random.default_rng(11)
    for _ in range(60):
        m, n = int(rng.integers(1, 7)), int(rng.integers(1, 9))
        a = (rng.random((m, n)) < 0.5).astype(int) * rng.integers(1, 4, (m, n))
        a[:, 0] = np.maximum(a[:, 0], 1)  # keep it feasible
        b = rng.integers(0, 6, m)
        c = rng.integers(0, 5, n)
        cols = [{r: int(a[r, j]) for r in range(m) if a[r, j]} for j in range(n)]
        ours = solve_covering(cols, b.tolist(), c.tolist())
        ref = linprog(c, A_ub=-a, b_ub=-b, bounds=[(0, None)] * n, method="highs")
        assert ref.status == 0
        assert float(ours.objective) == pytest.approx(ref.fun, abs=1e-7)
        assert all(isinstance(v, Fraction) for v in ours.x)


def test_simplex_degenerate_and_errors():
    # every column covers every row: heavily degenerate, optimum 3
    res = solve_covering([{0: 1, 1: 1, 2: 1}] * 4, [3, 3, 3])
    assert res.objective == 3
    with pytest.raises(LPInfeasible):
        solve_covering([{0: 1}], [1, 1])
    with pytest.raises(ValueError):
        solve_covering([{0: 1}], [-1])


def test_simplex_odd_cycle_half_integral():
    cols = [{i: 1, (i + 1) % 5: 1} for i in range(5)]
    res = solve_covering(cols, [1] * 5)
    assert res.objective == Fraction(5, 2)
    assert set(res.x) == {Fraction(1, 2)}


# --- fractional coloring -----------------------------------------------------


def test_fractional_brute_known_graphs():
    assert fractional_chromatic_brute(undirected_from_edges(range(5), [(i, (i + 1) % 5) for i in range(5)])) == Fraction(5, 2)
    assert fractional_chromatic_brute(undirected_from_edges(range(7), [(i, (i + 1) % 7) for i in range(7)])) == Fraction(7, 2)
    assert fractional_chromatic_brute(undirected_from_edges(range(4), [])) == 4
    assert fractional_chromatic_brute(undirected_from_edges([], [])) == 0


def test_c5_vector_code():
    inst = c5_witness()
    vs = solve_vector(inst)
    assert vs.rate == Fraction(5, 2)
    assert vs.code.t == 5 and vs.code.p == 2
    assert solve_xor(inst).length == 3
    check_code(inst, vs)


@given(st.integers(0, 7), st.integers(0, 7))
def test_k2_weights_give_max(a, b):
    cg = build_category_graph(2).with_weights({label(0, 1): a, label(1, 0): b})
    fs = fractional_multicolor(cg)
    assert fs.objective == max(a, b)


@settings(max_examples=30)
@given(st.lists(st.integers(0, 4), min_size=9, max_size=9))
def test_k3_fractional_equals_ilp(ws):
    cg = build_category_graph(3)
    cg = cg.with_weights(dict(zip(cg.vertices, ws)))
    cs = clique_system(3)
    fs = fractional_multicolor(cg)
    assert fs.objective == branch_and_bound(cs, cs.weight_vector(cg)).objective


def test_complete_bipartite_instance():
    # K_{3,2}: helper 0 users 0-2 cached at helper 1 and vice versa
    inst = CanonicalInstance(
        5, (Helper(frozenset({3, 4}), frozenset({0, 1, 2})), Helper(frozenset({0, 1, 2}), frozenset({3, 4})))
    )
    vs = solve_vector(inst)
    assert vs.rate == 3 and vs.code.p == 1
    check_code(inst, vs)


def test_edgeless_instance():
    inst = random_canonical(random.Random(2), 3, 6, density=0.0)
    vs = solve_vector(inst)
    assert vs.rate == 6
    check_code(inst, vs)


def test_pair7_vector_rate():
    vs = solve_vector(pair7_instance())
    assert vs.rate == 5 and vs.g2_rate == 2
    check_code(pair7_instance(), vs)


def test_reallocation_shapes():
    dec = decompose(build_side_info_graph(c5_witness()))
    cg = categorize(dec).graph
    fs = fractional_multicolor(cg)
    alloc = reallocate_colors(fs, cg)
    assert alloc.t == 5 and alloc.p == 2
    for v, parts in alloc.member_colors.items():
        assert len(parts) == cg.w(v)
        assert all(len(p) == 2 for p in parts)


def test_equivalence_random_small():
    rng = random.Random(23)
    for _ in range(30):
        inst, dec = random_g2_bounded(rng, rng.randint(2, 4), 12)
        vs = solve_vector(inst)
        assert vs.g2_rate == fractional_chromatic_brute(dec.g2)
        assert vs.rate <= solve_xor(inst).length
        check_code(inst, vs)


def test_solve_vector_deterministic():
    rng = random.Random(3)
    inst, _ = random_g2_bounded(rng, 4, 14)
    assert solve_vector(inst).code == solve_vector(inst).code


def test_brute_oracle_budget():
    from ich.codec import BudgetExceeded

    with pytest.raises(BudgetExceeded):
        fractional_chromatic_brute(undirected_from_edges(range(13), []))
    assert brute_clique_cover(undirected_from_edges(range(3), [])) == 3
