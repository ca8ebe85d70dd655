"""Turning multicolorings into XOR codes, and the solver dispatch."""

from __future__ import annotations

from dataclasses import dataclass

from ..category import Labeling, categorize
from ..codec import XorCode
from ..instance import CanonicalInstance
from ..sigraph import Decomposition, build_side_info_graph, decompose
from .bnb import branch_and_bound
from .brute import brute_clique_cover
from .cliques import MultiColoring, clique_system, is_valid_multicoloring, multicoloring_from_vector
from .graver import GRAVER_MAX_K, GraverBasis, graver_basis, optintprog
from .greedy import greedy_k3, two_helper_optimum

METHODS = ("auto", "k2", "k3-greedy", "graver", "bnb", "brute")


def coloring_to_code(mc: MultiColoring, labeling: Labeling, dec: Decomposition) -> XorCode:
    """One transmission per color plus one uncoded transmission per out-vertex.

    Each category hands its users, in ascending id order, to its colors in
    ascending color order.
    """
    cg = labeling.graph
    groups = labeling.groups()
    for v in cg.vertices:
        if len(mc.of(v)) != cg.w(v):
            raise ValueError(f"category {v} has {len(mc.of(v))} colors but weight {cg.w(v)}")
    members: dict[int, list[int]] = {}
    for v, users in groups.items():
        for color, user in zip(sorted(mc.of(v)), users):
            members.setdefault(color, []).append(user)
    txs = [tuple(sorted(members[c])) for c in sorted(members)]
    txs += [(u,) for u in sorted(dec.out_vertices)]
    return XorCode(dec.n, tuple(txs))


@dataclass(frozen=True)
class XorSolution:
    length: int
    code: XorCode
    coloring: MultiColoring | None
    method: str
    dec: Decomposition
    labeling: Labeling | None


_GRAVER_CACHE: dict[int, GraverBasis] = {}


def cached_graver(k: int) -> GraverBasis:
    if k not in _GRAVER_CACHE:
        _GRAVER_CACHE[k] = graver_basis(clique_system(k))
    return _GRAVER_CACHE[k]


def solve_xor(canon: CanonicalInstance, method: str = "auto", basis: GraverBasis | None = None) -> XorSolution:
    """Optimal XOR coloring of a canonical instance with the chosen solver.

    ``basis`` supplies a precomputed Graver basis for the ``graver`` method.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    gd = build_side_info_graph(canon)
    dec = decompose(gd)
    if method == "k2":
        length, code = two_helper_optimum(canon)
        return XorSolution(length, code, None, "k2", dec, None)
    if not dec.g2.vertices:
        code = XorCode(canon.n, tuple((u,) for u in sorted(dec.out_vertices)))
        return XorSolution(code.t, code, None, "trivial", dec, None)
    labeling = categorize(dec)
    cg = labeling.graph
    if method == "auto":
        method = "k3-greedy" if cg.k == 3 else ("graver" if cg.k <= GRAVER_MAX_K else "bnb")
    if method == "k3-greedy":
        mc = greedy_k3(cg)
    elif method == "brute":
        # exact count from the oracle, coloring from branch and bound
        count = brute_clique_cover(dec.g2)
        cs = clique_system(cg.k)
        res = branch_and_bound(cs, cs.weight_vector(cg))
        if res.objective != count:
            raise AssertionError(f"brute force {count} disagrees with branch and bound {res.objective}")
        mc = multicoloring_from_vector(cs, res.c)
    else:
        cs = clique_system(cg.k)
        w = cs.weight_vector(cg)
        if method == "graver":
            gb = basis if basis is not None and basis.k == cg.k else cached_graver(cg.k)
            c = optintprog(cs, w, gb).c
        else:
            c = branch_and_bound(cs, w).c
        mc = multicoloring_from_vector(cs, c)
    assert is_valid_multicoloring(mc, cg)
    code = coloring_to_code(mc, labeling, dec)
    return XorSolution(code.t, code, mc, method, dec, labeling)
