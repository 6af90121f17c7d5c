"""Exact and numeric generating functions for Eulerian orientations of planar maps."""
from .exactalg import BivarPoly, LaurentX, TSeries, from_json, parse_poly, to_json
from .methods import METHODS, compute_coeffs

__version__ = "0.1.0"
__all__ = ["BivarPoly", "LaurentX", "TSeries", "to_json", "from_json", "parse_poly", "compute_coeffs", "METHODS"]
