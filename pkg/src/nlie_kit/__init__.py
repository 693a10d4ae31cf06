"""Exact computations with n-Lie algebras and their modules.

The central object is the vector product algebra V_n, whose basic Lie
algebra is so_{n+1}; the package decides which so_{n+1}-modules prolong
to n-Lie modules of V_n.
"""

__version__ = "0.1.0"

from .basiclie import LieAlgebra, basic_lie_algebra, iso_to_so, jacobi_check, so_algebra, verify_iso_to_so
from .errors import ArityError, ConsistencyError, IndexPatternError, NLieError, ParseError, ShapeError
from .exact import GaussianRational, Matrix
from .nlie import NLieAlgebra, is_filippov, semidirect_sum, vector_product_algebra
from .prolong import (
    ObstructionIndex,
    ProlongReport,
    can_prolong,
    check_module_axioms,
    dimension_formula,
    is_irreducible,
    prolong_check_general,
    q2_span_dimension,
    r_operator,
)
from .sorep import LieRep, direct_sum, harmonic_module, polynomial_module, so4_tensor_module, wedge2_module

__all__ = [
    "__version__",
    "ArityError",
    "ConsistencyError",
    "GaussianRational",
    "IndexPatternError",
    "LieAlgebra",
    "LieRep",
    "Matrix",
    "NLieAlgebra",
    "NLieError",
    "ObstructionIndex",
    "ParseError",
    "ProlongReport",
    "ShapeError",
    "basic_lie_algebra",
    "can_prolong",
    "check_module_axioms",
    "dimension_formula",
    "direct_sum",
    "harmonic_module",
    "is_filippov",
    "is_irreducible",
    "iso_to_so",
    "jacobi_check",
    "polynomial_module",
    "prolong_check_general",
    "q2_span_dimension",
    "r_operator",
    "semidirect_sum",
    "so4_tensor_module",
    "so_algebra",
    "vector_product_algebra",
    "verify_iso_to_so",
    "wedge2_module",
]
