"""Index coding with caching helpers: reductions, XOR and vector XOR coloring."""

from .codec import BudgetExceeded, VectorXorCode, XorCode, simulate_decode, verify_vector_code, verify_xor_code
from .instance import CanonicalInstance, HelperNetwork, union_expansion, zipf_instance
from .sigraph import build_side_info_graph, decompose, underlying_undirected

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "VectorXorCode", "XorCode", "simulate_decode",
    "verify_vector_code", "verify_xor_code", "CanonicalInstance", "HelperNetwork",
    "union_expansion", "zipf_instance", "build_side_info_graph", "decompose",
    "underlying_undirected",
]
