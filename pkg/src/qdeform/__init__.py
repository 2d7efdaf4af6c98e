"""Hyperplane arrangements from graphs and simplicial complexes over finite fields.

Builders for graphic arrangements, q-deformations and graphic monomial
arrangements; characteristic polynomials by lattice, subsets and point
counting; explicit free bases with Saito certificates; supersolvable checks.
"""

from .arrangement import (
    Arrangement,
    Hyperplane,
    build_graphic,
    build_monomial,
    build_qdef_complex,
    build_qdef_graph,
    build_sgq,
    delete,
    restrict,
)
from .charpoly import build_lattice, charpoly_mobius, charpoly_subsets, complement_count
from .combinat import Graph, SimplicialComplex, chromatic_poly, complex_from_facets, mcs_peo
from .gf import FieldSpec, field_make, field_of_order
from .polyalg import IntPoly, MPoly

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "FieldSpec",
    "Graph",
    "Hyperplane",
    "IntPoly",
    "MPoly",
    "SimplicialComplex",
    "build_graphic",
    "build_lattice",
    "build_monomial",
    "build_qdef_complex",
    "build_qdef_graph",
    "build_sgq",
    "charpoly_mobius",
    "charpoly_subsets",
    "chromatic_poly",
    "complement_count",
    "complex_from_facets",
    "delete",
    "field_make",
    "field_of_order",
    "mcs_peo",
    "restrict",
]
