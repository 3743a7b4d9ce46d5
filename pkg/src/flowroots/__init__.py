"""Flow polynomials, zero-free intervals and the Θ graph family."""
from .multigraph import MultiGraph, parse_multigraph, canonical_code, structural_summary
from .polynomial import IntPolynomial
from .flow import flow_polynomial, flow_poly, flow_count

__all__ = [
    "MultiGraph",
    "parse_multigraph",
    "canonical_code",
    "structural_summary",
    "IntPolynomial",
    "flow_polynomial",
    "flow_poly",
    "flow_count",
]
