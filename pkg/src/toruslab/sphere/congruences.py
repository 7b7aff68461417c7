"""
Congruences of S³: orthogonal 4×4 matrices acting on points, equators and immersions.

Composition order is "apply right first": `(P @ Q).apply(x) == P.apply(Q.apply(x))`.
"""

from __future__ import annotations

import dataclasses

import numpy as np
import numpy.typing as npt
from scipy.stats import special_ortho_group

from toruslab.errors import DomainError
from .points import Equator, SpherePoint, as_array


ORTHOGONALITY_TOLERANCE = 1e-10


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True, eq=False)
class Congruence:
    """
    Orthogonal transformation of ℝ⁴ restricted to S³.

    Congruences preserve the inner product, hence intrinsic distances, and map equators to
    equators. They also expose `value`, `jacobian` and `hessian`, so they can be used wherever
    an ambient map is composed with an immersion.

    | Field         | Type         | Semantics                                          |
    |---------------|--------------|----------------------------------------------------|
    | `Q`           | `np.ndarray` | Read-only 4×4 matrix with QᵀQ = I within 1e-10.    |
    | `determinant` | `int`        | +1 for rotations, -1 for reflections.              |
    """

    Q: np.ndarray
    determinant: int = dataclasses.field(init=False)

    def __post_init__(self) -> None:
        Q = np.array(self.Q, dtype=float)
        if Q.shape != (4, 4):
            raise DomainError(f"Congruence needs a 4x4 matrix, got shape {Q.shape}")
        defect = float(np.max(np.abs(Q.T @ Q - np.eye(4))))
        if defect > ORTHOGONALITY_TOLERANCE:
            raise DomainError(f"matrix is not orthogonal: max |QᵀQ - I| = {defect:.3e}")
        Q.flags.writeable = False
        object.__setattr__(self, "Q", Q)
        object.__setattr__(self, "determinant", 1 if np.linalg.det(Q) > 0 else -1)

    @classmethod
    def identity(cls) -> Congruence:
        return cls(Q=np.eye(4))

    @classmethod
    def random(cls, seed: int | np.random.Generator | None = None) -> Congruence:
        """
        Draw a rotation uniformly from SO(4) (Haar measure).
        """
        return cls(Q=special_ortho_group.rvs(4, random_state=seed))

    def inverse(self) -> Congruence:
        return Congruence(Q=self.Q.T)

    def __matmul__(self, other: Congruence) -> Congruence:
        return Congruence(Q=self.Q @ other.Q)

    def apply(self, x: SpherePoint | npt.ArrayLike) -> np.ndarray:
        """
        Apply the congruence to a point or to an array of points with last axis 4.
        """
        return as_array(x) @ self.Q.T

    def map_point(self, p: SpherePoint) -> SpherePoint:
        return SpherePoint(x=self.apply(p))

    def map_equator(self, eq: Equator) -> Equator:
        """
        Image equator Q(S(v)) = S(Qv), with half-sphere labels carried along.
        """
        return Equator(v=self.apply(eq.v))

    def value(self, x: npt.ArrayLike) -> np.ndarray:
        return np.asarray(x, dtype=float) @ self.Q.T

    def jacobian(self, x: npt.ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.broadcast_to(self.Q, x.shape[:-1] + (4, 4)).copy()

    def hessian(self, x: npt.ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.zeros(x.shape[:-1] + (4, 4, 4))

    def __repr__(self) -> str:
        return f"Congruence(determinant={self.determinant})"
