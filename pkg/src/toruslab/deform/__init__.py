"""
Diffeomorphisms of S³ and their canonical extensions to the annulus A₂, sampled Hölder
C^{2,α} norms and the functional τ^α, minimality residuals at the Clifford lattice, membership
residuals and products of arcs inside an equator.
"""

from .annulus import (
    AnnulusMap,
    CanonicalExtension,
    ComposedAnnulusMap,
    DifferenceMap,
    ScaledMap,
    SineShearMap,
    canonical_extend,
    identity_annulus,
)
from .arcs import (
    ClosedCurve,
    SphereArc,
    arc_from_circle,
    arc_from_curve,
    arc_from_derivatives,
    arc_from_parametric,
    arc_from_points,
    close_arc,
    curve_product,
    spline_arc,
    truncate_curve,
)
from .holder import (
    HolderReport,
    annulus_samples,
    c2alpha_norm,
    distance_to_identity,
    holder_seminorm,
    sample_pairs,
    tau,
)
from .lattice import deformed_clifford, minimality_residual_at_lattice
from .maps import (
    ComposedMap,
    IdentityMap,
    MobiusBoost,
    NormalBumpMap,
    NumericalInverse,
    OrthogonalMap,
    SphereMap,
    TwistMap,
    normalized_jet,
    tangent_basis,
)
from .membership import MembershipReport, deformed_line_of_curvature, equator_samples, omega_membership

__all__ = [
    "AnnulusMap",
    "CanonicalExtension",
    "ClosedCurve",
    "ComposedAnnulusMap",
    "ComposedMap",
    "DifferenceMap",
    "HolderReport",
    "IdentityMap",
    "MembershipReport",
    "MobiusBoost",
    "NormalBumpMap",
    "NumericalInverse",
    "OrthogonalMap",
    "ScaledMap",
    "SineShearMap",
    "SphereArc",
    "SphereMap",
    "TwistMap",
    "annulus_samples",
    "arc_from_circle",
    "arc_from_curve",
    "arc_from_derivatives",
    "arc_from_parametric",
    "arc_from_points",
    "c2alpha_norm",
    "canonical_extend",
    "close_arc",
    "curve_product",
    "deformed_clifford",
    "deformed_line_of_curvature",
    "distance_to_identity",
    "equator_samples",
    "holder_seminorm",
    "identity_annulus",
    "minimality_residual_at_lattice",
    "normalized_jet",
    "omega_membership",
    "sample_pairs",
    "spline_arc",
    "tangent_basis",
    "tau",
    "truncate_curve",
]
