"""
Equator-torus intersections: height functions on the parameter torus, tangencies, traced curves
with their winding classes, the four intersection types, two-piece scans, the type-2 equator
search and curvature profiles for congruence tests.
"""

from .classification import IntersectionReport, antipodal_residual, assign_type, check_negative_curvature, classify
from .components import component_count, count_sign_components
from .curves import CurvatureProfile, IntersectionCurve
from .heights import HeightField, height_grid
from .profiles import (
    blowup_sequence,
    curvature_profile,
    curves_congruent,
    osculating_curvature,
    profile_distance,
    tangency_distance,
)
from .scanning import ScanEntry, ScanFailure, ScanReport, random_poles, scan_two_piece
from .search import find_type2_equator
from .tangencies import (
    CriticalPointSearch,
    TangencyPoint,
    find_tangencies,
    hessian_signature,
    refine_critical_point,
    search_tangencies,
    tangent_equator,
)
from .tracing import trace_zero_set
from .winding import same_class_up_to_orientation, winding_class, winding_of_polyline

__all__ = [
    "CriticalPointSearch",
    "CurvatureProfile",
    "HeightField",
    "IntersectionCurve",
    "IntersectionReport",
    "ScanEntry",
    "ScanFailure",
    "ScanReport",
    "TangencyPoint",
    "antipodal_residual",
    "assign_type",
    "blowup_sequence",
    "check_negative_curvature",
    "classify",
    "component_count",
    "count_sign_components",
    "curvature_profile",
    "curves_congruent",
    "find_tangencies",
    "find_type2_equator",
    "height_grid",
    "hessian_signature",
    "osculating_curvature",
    "profile_distance",
    "random_poles",
    "refine_critical_point",
    "same_class_up_to_orientation",
    "scan_two_piece",
    "search_tangencies",
    "tangency_distance",
    "tangent_equator",
    "trace_zero_set",
    "winding_class",
    "winding_of_polyline",
]
