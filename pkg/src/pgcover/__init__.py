"""Exact computation with partial covers and blocking sets of PG(n, q)."""

from .constructions import (Construction, ConstructionRecipe, dual_construction,
                            example16_construct, generalized_example16, pencil,
                            remark9_construct)
from .covers import (PartialCover, PointSet, covering_multiplicity, dualize_cover,
                     dualize_points, essential_hyperplanes, holes, holes_collinear,
                     holes_in_common_hyperplane, is_blocking_set, is_cover,
                     is_essential_point, is_partial_cover, is_trivial, minimal_reduce,
                     tangent_hyperplanes)
from .galois import FieldElement, FieldSpec, elements, field_new, field_of_order
from .projective import PG, Hyperplane, ProjPoint, Subspace, space, theta
from .verify import (VerifyReport, detect_pencil_structure, enumerate_covers,
                     verify_hole_theorem, verify_reduction_uniqueness,
                     verify_structure_theorem, verify_tangent_bound)

__version__ = "0.1.0"

__all__ = [
    "Construction", "ConstructionRecipe", "dual_construction", "example16_construct",
    "generalized_example16", "pencil", "remark9_construct",
    "PartialCover", "PointSet", "covering_multiplicity", "dualize_cover", "dualize_points",
    "essential_hyperplanes", "holes", "holes_collinear", "holes_in_common_hyperplane",
    "is_blocking_set", "is_cover", "is_essential_point", "is_partial_cover", "is_trivial",
    "minimal_reduce", "tangent_hyperplanes",
    "FieldElement", "FieldSpec", "elements", "field_new", "field_of_order",
    "PG", "Hyperplane", "ProjPoint", "Subspace", "space", "theta",
    "VerifyReport", "detect_pencil_structure", "enumerate_covers", "verify_hole_theorem",
    "verify_reduction_uniqueness", "verify_structure_theorem", "verify_tangent_bound",
]
