from __future__ import annotations

import numpy as np

from toruslab.surfaces import CliffordTorus, PushforwardTorus, curvatures, lattice_angles
from .maps import SphereMap


def deformed_clifford(X: SphereMap) -> PushforwardTorus:
    """
    The immersion (u, v) ↦ X(clifford_eval(u, v)).
    """
    return PushforwardTorus(X, CliffordTorus())


def minimality_residual_at_lattice(X: SphereMap, n: int) -> float:
    """
    Largest |H| of X(T) at the images X(p^{jk}_n) of the 4n² lattice points.

    Parameters:
        X:
            Sphere diffeomorphism with two derivatives.
        n:
            Lattice order, at least 1.

    Returns:
        max_{j,k} |H(X(T))(X(p^{jk}_n))|; zero when X(T) is minimal at every lattice image.

    Raises:
        DomainError:
            If n < 1.
        SingularityError:
            If the pushed-forward immersion degenerates at a lattice point.
    """
    angles = lattice_angles(n)
    U, V = np.meshgrid(angles, angles, indexing="ij")
    sample = curvatures(deformed_clifford(X), U, V)
    return float(np.max(np.abs(sample.H)))
