"""Locating colorings of trees."""
from .coloring import Coloring, RayVertex, Verdict, VerdictKind, color_code, relabel, verify_locating
from .exact import UNKNOWN, ExactResult, SearchConfig, brute_force_chi_L, exact_chi_L, is_locating_k_colorable
from .kernels import BACKEND
from .paint import BoundReport, color_tree, degree_lower_bound, extend_compact, extend_simple
from .tree import Terminal, Tree, decompose, end_paths, reduce, reduction_sequence

__all__ = [
    "BACKEND", "BoundReport", "Coloring", "ExactResult", "RayVertex", "SearchConfig", "Terminal", "Tree",
    "UNKNOWN", "Verdict", "VerdictKind", "brute_force_chi_L", "color_code", "color_tree", "decompose",
    "degree_lower_bound", "end_paths", "exact_chi_L", "extend_compact", "extend_simple",
    "is_locating_k_colorable", "reduce", "reduction_sequence", "relabel", "verify_locating",
]
