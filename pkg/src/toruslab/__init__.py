"""
A numerical laboratory for tori immersed in the unit 3-sphere.

The package covers exact primitives of S³, parametrized torus immersions with their curvature
functions, equator-torus intersection tracing and classification, sampled Hölder functionals of
sphere diffeomorphisms, and Laplace-Beltrami spectra of torus meshes.
"""

__version__ = "0.1.0"

__all__ = [
    "__version__",
]
