"""MDS codes from elliptic curves whose evaluation points form an index-2 subgroup."""

from .gf import FieldCtx, FieldElement, FieldError, field_of_order, make_field
from .ec import Curve, Point, group_structure, index2_subgroup, index2_subgroups, new_curve, parse_point, search_curve
from .code import LinearCode, build_code_even, build_code_odd, dumps, extend_code, loads
from .analysis import BudgetExceeded, schur_square, verify

__version__ = "0.1.0"

__all__ = [
    "FieldCtx",
    "FieldElement",
    "FieldError",
    "field_of_order",
    "make_field",
    "Curve",
    "Point",
    "group_structure",
    "index2_subgroup",
    "index2_subgroups",
    "new_curve",
    "parse_point",
    "search_curve",
    "LinearCode",
    "build_code_even",
    "build_code_odd",
    "dumps",
    "extend_code",
    "loads",
    "BudgetExceeded",
    "schur_square",
    "verify",
]
