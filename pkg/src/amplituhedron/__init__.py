"""Exact computations for the tree amplituhedron in Gr(2,4).

Boundary strata, residual arrangement, adjoint and canonical form,
all over the rationals.
"""

from .adjoint import AdjointPoly, adjoint_n5_closed_form, polygon_adjoint_2d, solve_adjoint
from .canonical import canonical_form, normalize, polygon_canonical_demo
from .errors import ClaimFailure, DegenerateError, ValidationError
from .grassmann import Pluecker, PointP3, PlaneP3, pluecker_from_matrix
from .membership import amplituhedron_map, cell_sample, membership_open
from .strata import StratumId, enumerate_strata, residual_count, stratum_counts
from .zinput import ZMatrix, check_genericity, check_totally_positive, moment_curve_z

__all__ = [
    "AdjointPoly", "adjoint_n5_closed_form", "polygon_adjoint_2d", "solve_adjoint",
    "canonical_form", "normalize", "polygon_canonical_demo",
    "ClaimFailure", "DegenerateError", "ValidationError",
    "Pluecker", "PointP3", "PlaneP3", "pluecker_from_matrix",
    "amplituhedron_map", "cell_sample", "membership_open",
    "StratumId", "enumerate_strata", "residual_count", "stratum_counts",
    "ZMatrix", "check_genericity", "check_totally_positive", "moment_curve_z",
]

__version__ = "0.1.0"
