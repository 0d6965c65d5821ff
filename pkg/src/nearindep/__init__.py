"""Counting k-nearly independent vertex subsets and Nordhaus-Gaddum extremal search."""
from .families import FamilySpec, bound, build, closed_form_ng
from .graph import (
    Graph,
    VertexSet,
    canonical_form,
    closed_neighborhood,
    complement,
    delete_vertices,
    from_graph6,
    join,
    to_graph6,
    union,
)
from .invariants import (
    InvariantReport,
    is_good,
    ng_sum,
    report,
    sigma0,
    sigma1_recursive,
    sigma_k_oracle,
)
from .search import ExtremalResult, VerificationReport, extremal_scan, gen_graphs, gen_trees, verify_theorem

__version__ = "0.1.0"

__all__ = [
    "ExtremalResult", "FamilySpec", "Graph", "InvariantReport", "VerificationReport", "VertexSet",
    "bound", "build", "canonical_form", "closed_form_ng", "closed_neighborhood", "complement",
    "delete_vertices", "extremal_scan", "from_graph6", "gen_graphs", "gen_trees", "is_good", "join",
    "ng_sum", "report", "sigma0", "sigma1_recursive", "sigma_k_oracle", "to_graph6", "union",
    "verify_theorem",
]
