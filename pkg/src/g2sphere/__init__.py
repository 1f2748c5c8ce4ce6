"""Octonion inner automorphisms, the exceptional algebra g2, the
two-parameter family of left-invariant complex structure operators, and
the induced tensor machinery on the six-sphere: exact arithmetic over
Q(sqrt2, sqrt3), numeric pipelines, polynomial matrix-element tables,
orbit intersection diagnostics, and a batch CLI.
"""

__version__ = "1.0.0"

from .scalars import QuadComplex, QuadScalar, SQRT2, SQRT3, SQRT6
from .octonion import Octonion, MUL_INDEX, MUL_SIGN, oct_mul
from .g2_algebra import RootBasis, bracket, real_basis, root_basis
from .samelson import JOperator, Moduli, j_operator
from .sphere_map import f_matrix, f_pullback, f_pushforward
from .charts import chart_contains, frame_at, solve_x_of_y
from .j_sphere import j_apply, j_element, j_matrix
from .orbit_analysis import dimension_report, intersection_dim
from .poly_engine import MultiPoly, extract_matrix_elements, reduce

__all__ = [
    "QuadComplex", "QuadScalar", "SQRT2", "SQRT3", "SQRT6",
    "Octonion", "MUL_INDEX", "MUL_SIGN", "oct_mul",
    "RootBasis", "bracket", "real_basis", "root_basis",
    "JOperator", "Moduli", "j_operator",
    "f_matrix", "f_pullback", "f_pushforward",
    "chart_contains", "frame_at", "solve_x_of_y",
    "j_apply", "j_element", "j_matrix",
    "dimension_report", "intersection_dim",
    "MultiPoly", "extract_matrix_elements", "reduce",
]
