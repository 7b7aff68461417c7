"""
Torus immersions into S³ with analytic derivatives, their curvature functions, the Clifford
lattice with its lines of curvature, sampled meshes and surface descriptors.
"""

from .base import SurfaceJet, TorusImmersion, circle_product_jet, get_registered_immersions
from .clifford import HALF_SQRT2, CliffordTorus, HomogeneousTorus, clifford_eval, homogeneous_eval
from .curvature import (
    CurvatureSample,
    FundamentalForms,
    check_immersion,
    curvature_grid,
    curvatures,
    fundamental_forms,
    gauss_kronecker_grid,
    normal,
    parameter_grid,
    principal_directions,
    unit_normal,
)
from .cyclide import Cyclide, CyclidePreset, cyclide_presets
from .descriptors import SurfaceDescriptor, immersion_from_parameters, parse_bump, parse_surface
from .lattice import LineOfCurvature, lattice_angles, lattice_points, line_of_curvature
from .mesh import SurfaceMesh, sample_mesh
from .perturbed import PerturbedTorus, TrigBump, perturb_normal
from .pushforward import AmbientMap, PushforwardTorus, push_jet

__all__ = [
    "AmbientMap",
    "CliffordTorus",
    "CurvatureSample",
    "Cyclide",
    "CyclidePreset",
    "FundamentalForms",
    "HALF_SQRT2",
    "HomogeneousTorus",
    "LineOfCurvature",
    "PerturbedTorus",
    "PushforwardTorus",
    "SurfaceDescriptor",
    "SurfaceJet",
    "SurfaceMesh",
    "TorusImmersion",
    "TrigBump",
    "check_immersion",
    "circle_product_jet",
    "clifford_eval",
    "curvature_grid",
    "curvatures",
    "cyclide_presets",
    "fundamental_forms",
    "gauss_kronecker_grid",
    "get_registered_immersions",
    "homogeneous_eval",
    "immersion_from_parameters",
    "lattice_angles",
    "lattice_points",
    "line_of_curvature",
    "normal",
    "parameter_grid",
    "parse_bump",
    "parse_surface",
    "perturb_normal",
    "principal_directions",
    "push_jet",
    "sample_mesh",
    "unit_normal",
]
