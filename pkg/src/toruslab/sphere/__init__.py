"""
Exact-formula primitives of S³ ⊂ ℝ⁴: points, equators, circles, geodesics, congruences, the
antipodal map and stereographic projection.

Congruence composition order is "apply right first": `(P @ Q).apply(x) == P.apply(Q.apply(x))`.
All values are immutable after construction.
"""

from .circles import GeodesicCircle, circle_curvature, coordinate_great_circle, rotation_about_geodesic
from .congruences import Congruence
from .points import (
    Equator,
    SpherePoint,
    antipodal,
    as_array,
    cross4,
    intrinsic_distance,
    signed_height,
)
from .projection import (
    InverseStereographic,
    project_points,
    stereographic_frame,
    stereographic_project,
)

__all__ = [
    "Congruence",
    "Equator",
    "GeodesicCircle",
    "InverseStereographic",
    "SpherePoint",
    "antipodal",
    "as_array",
    "circle_curvature",
    "coordinate_great_circle",
    "cross4",
    "intrinsic_distance",
    "project_points",
    "rotation_about_geodesic",
    "signed_height",
    "stereographic_frame",
    "stereographic_project",
]
