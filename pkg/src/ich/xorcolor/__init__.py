"""Scalar XOR coloring: closed forms, greedy, Graver augmentation, branch and bound."""

from .bnb import BnBResult, branch_and_bound
from .brute import brute_clique_cover, clique_number, independence_number
from .cliques import (
    CliqueSystem,
    MultiColoring,
    clique_system,
    is_valid_multicoloring,
    multicoloring_from_vector,
)
from .graver import (
    GraverBasis,
    IntProgResult,
    augment,
    conformal_decomposition,
    conformal_leq,
    graver_basis,
    load_basis,
    max_subdeterminant,
    optintprog,
    save_basis,
)
from .greedy import K3_ORDER, greedy_k3, greedy_multicolor, k3_count_formula, two_helper_optimum
from .solve import METHODS, XorSolution, cached_graver, coloring_to_code, solve_xor

__all__ = [
    "BnBResult", "branch_and_bound", "brute_clique_cover", "clique_number",
    "independence_number", "CliqueSystem", "MultiColoring", "clique_system",
    "is_valid_multicoloring", "multicoloring_from_vector", "GraverBasis",
    "IntProgResult", "augment", "conformal_decomposition", "conformal_leq",
    "graver_basis", "load_basis", "max_subdeterminant", "optintprog", "save_basis",
    "K3_ORDER", "greedy_k3", "greedy_multicolor", "k3_count_formula",
    "two_helper_optimum", "METHODS", "XorSolution", "cached_graver",
    "coloring_to_code", "solve_xor",
]
