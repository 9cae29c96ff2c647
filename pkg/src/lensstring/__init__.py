"""String coproduct, cobracket and Whitehead-torsion computations on 3-dimensional lens spaces."""

from .bialgebra import AlphaTensor, EqClass, bialgebra_check, bialgebra_lhs, bialgebra_rhs
from .classify import homeomorphic, homotopy_equivalent, search_smallest
from .cyclic import CyclicPoly, OneForm, de_rham, dennis_dlog, invert_unit, substitute, substitute_pushforward
from .equivariant import (
    Convention,
    CountReport,
    EqTensor,
    EqTensorPair,
    cobracket_k_family,
    cobracket_pi_y,
    count_nonzero,
    count_nonzero_coproduct,
    project_pi,
)
from .errors import LensStringError, NotInvertibleError, UnsupportedDegreeError
from .loop import BiForm, LensPair, RhoClass, coproduct_rho, k_family_coproduct
from .torsion import L91_TO_L94, LensMap, correction_term, torsion_unit, transform_check

__version__ = "0.1.0"

__all__ = [
    "AlphaTensor",
    "BiForm",
    "Convention",
    "CountReport",
    "CyclicPoly",
    "EqClass",
    "EqTensor",
    "EqTensorPair",
    "L91_TO_L94",
    "LensMap",
    "LensPair",
    "LensStringError",
    "NotInvertibleError",
    "OneForm",
    "RhoClass",
    "UnsupportedDegreeError",
    "bialgebra_check",
    "bialgebra_lhs",
    "bialgebra_rhs",
    "cobracket_k_family",
    "cobracket_pi_y",
    "coproduct_rho",
    "correction_term",
    "count_nonzero",
    "count_nonzero_coproduct",
    "de_rham",
    "dennis_dlog",
    "homeomorphic",
    "homotopy_equivalent",
    "invert_unit",
    "k_family_coproduct",
    "project_pi",
    "search_smallest",
    "substitute",
    "substitute_pushforward",
    "torsion_unit",
    "transform_check",
]
