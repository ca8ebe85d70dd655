"""Vector XOR coloring via exact fractional multicoloring."""

from .fractional import (
    ColorAllocation,
    FractionalSolution,
    VectorSolution,
    fractional_chromatic_brute,
    fractional_multicolor,
    reallocate_colors,
    solve_vector,
    to_vector_code,
)
from .maxcliques import MAXIMAL_CLIQUE_CAP, EnumerationInfeasible, maximal_cliques, maximal_cliques_graph
from .simplex import LPInfeasible, LPResult, solve_covering

__all__ = [
    "ColorAllocation", "FractionalSolution", "VectorSolution",
    "fractional_chromatic_brute", "fractional_multicolor", "reallocate_colors",
    "solve_vector", "to_vector_code", "MAXIMAL_CLIQUE_CAP", "EnumerationInfeasible",
    "maximal_cliques", "maximal_cliques_graph", "LPInfeasible", "LPResult", "solve_covering",
]
