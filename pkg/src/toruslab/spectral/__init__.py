"""
Laplace-Beltrami spectra of torus meshes in the induced metric: finite-element operators,
Rayleigh quotients, leading eigenpairs, the coordinate eigenresidual and the first-eigenvalue
dichotomy test for minimal tori.
"""

from .eigen import SpectralResult, first_eigenpairs, multiplicity_groups
from .export import read_eigenfunctions, write_eigenfunctions
from .montiel_ros import (
    MontielRosReport,
    coordinate_eigenresidual,
    estimate_margin,
    montiel_ros_test,
)
from .operators import assemble_operators, cell_vertices, project_mean_zero, rayleigh_quotient

__all__ = [
    "MontielRosReport",
    "SpectralResult",
    "assemble_operators",
    "cell_vertices",
    "coordinate_eigenresidual",
    "estimate_margin",
    "first_eigenpairs",
    "montiel_ros_test",
    "multiplicity_groups",
    "project_mean_zero",
    "rayleigh_quotient",
    "read_eigenfunctions",
    "write_eigenfunctions",
]
