"""
Shared enumerations: intersection types, curve families, Hessian signatures, spectral verdicts,
surface kinds, map provenances and exit codes.
"""

from .curve_family import CurveFamily
from .exit_codes import ExitCode
from .hessian_signature import HessianSignature
from .intersection_type import IntersectionType
from .map_provenance import MapProvenance
from .surface_kind import SurfaceKind
from .verdicts import MontielRosVerdict

__all__ = [
    "CurveFamily",
    "ExitCode",
    "HessianSignature",
    "IntersectionType",
    "MapProvenance",
    "MontielRosVerdict",
    "SurfaceKind",
]
