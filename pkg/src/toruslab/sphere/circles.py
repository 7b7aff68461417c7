"""
Circles of S³, their curvature, and rotations about great circles.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np
import numpy.typing as npt

from toruslab.errors import DomainError, SingularityError
from .congruences import Congruence
from .points import Equator, SpherePoint, cross4


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True, eq=False)
class GeodesicCircle:
    """
    Circle of S³ at intrinsic distance `radius` from a center point, inside the 2-sphere spanned
    by the center and two orthonormal directions.

    The points are cos(r)·c + sin(r)·(cos t·e₁ + sin t·e₂). The circle has the antipodal pair
    of centers c and -c in its containing equator; radius π/2 gives a great circle.

    | Field    | Type          | Semantics                                                  |
    |----------|---------------|------------------------------------------------------------|
    | `center` | `SpherePoint` | Center c at distance `radius` from every point.            |
    | `e1`     | `np.ndarray`  | Unit direction orthogonal to c.                            |
    | `e2`     | `np.ndarray`  | Unit direction orthogonal to c and e1.                     |
    | `radius` | `float`       | Intrinsic radius in (0, π/2].                              |
    """

    center: SpherePoint
    e1: np.ndarray
    e2: np.ndarray
    radius: float

    def __post_init__(self) -> None:
        if not 0.0 < self.radius <= math.pi / 2 + 1e-15:
            raise DomainError(f"circle radius must lie in (0, π/2], got {self.radius!r}")
        frame = np.vstack([self.center.x, self.e1, self.e2])
        defect = float(np.max(np.abs(frame @ frame.T - np.eye(3))))
        if defect > 1e-10:
            raise DomainError(f"center, e1, e2 are not orthonormal (defect {defect:.3e})")

    @classmethod
    def great_circle(cls, p: SpherePoint, q: SpherePoint) -> GeodesicCircle:
        """
        Great circle through two non-antipodal, distinct points; its center completes the plane
        of p and q to an orthonormal triple.

        Raises:
            SingularityError:
                If p and q are equal or antipodal.
        """
        e1 = p.x
        w = q.x - (q.x @ e1) * e1
        norm = float(np.linalg.norm(w))
        if norm < 1e-12:
            raise SingularityError("great circle through equal or antipodal points is not unique")
        e2 = w / norm
        basis = np.linalg.svd(np.vstack([e1, e2]))[2]
        center = basis[2]
        return cls(center=SpherePoint(x=center), e1=e1, e2=e2, radius=math.pi / 2)

    @property
    def is_geodesic(self) -> bool:
        return abs(self.radius - math.pi / 2) <= 1e-12

    @property
    def curvature(self) -> float:
        return circle_curvature(self.radius)

    @property
    def centers(self) -> tuple[SpherePoint, SpherePoint]:
        return self.center, SpherePoint(x=-self.center.x)

    @property
    def equator(self) -> Equator:
        """
        The equator containing the circle and both of its centers.
        """
        return Equator.from_pole(cross4(self.center.x, self.e1, self.e2))

    def point(self, t: npt.ArrayLike) -> np.ndarray:
        t = np.asarray(t, dtype=float)[..., None]
        r = self.radius
        return math.cos(r) * self.center.x + math.sin(r) * (np.cos(t) * self.e1 + np.sin(t) * self.e2)

    def velocity(self, t: npt.ArrayLike) -> np.ndarray:
        t = np.asarray(t, dtype=float)[..., None]
        return math.sin(self.radius) * (-np.sin(t) * self.e1 + np.cos(t) * self.e2)

    def acceleration(self, t: npt.ArrayLike) -> np.ndarray:
        t = np.asarray(t, dtype=float)[..., None]
        return -math.sin(self.radius) * (np.cos(t) * self.e1 + np.sin(t) * self.e2)


def circle_curvature(r: float) -> float:
    """
    Curvature |cot r| of a circle of S³ at intrinsic distance r from its center.

    Parameters:
        r:
            Radius in (0, π/2].

    Returns:
        |cot r|, zero exactly for great circles.

    Raises:
        DomainError:
            If r ≤ 0 or r > π/2.
    """
    if not 0.0 < r <= math.pi / 2:
        raise DomainError(f"circle radius must lie in (0, π/2], got {r!r}")
    if r == math.pi / 2:
        return 0.0
    return abs(math.cos(r) / math.sin(r))


def rotation_about_geodesic(g: GeodesicCircle, angle: float) -> Congruence:
    """
    Rotation of S³ fixing a great circle pointwise.

    The 2-plane spanned by `g` is fixed; its orthogonal complement, spanned by the center c and
    the fourth frame vector d, is rotated by `angle` in the sense c → d. The frame [e1, e2, c, d]
    is positively oriented, so the result lies in SO(4).

    Parameters:
        g:
            Great circle (radius π/2).
        angle:
            Rotation angle in radians.

    Returns:
        Rotation Q with Q(g) = g pointwise.

    Raises:
        DomainError:
            If `g` is not a great circle.
    """
    if not g.is_geodesic:
        raise DomainError(f"rotation axis must be a geodesic, got radius {g.radius!r}")
    a, b, c = g.e1, g.e2, g.center.x
    d = cross4(a, b, c)
    d = d / np.linalg.norm(d)
    # det[a, b, c, d] = ⟨cross4(a, b, c), d⟩ = |cross4(a, b, c)| > 0
    cos_t, sin_t = math.cos(angle), math.sin(angle)
    Q = (
        np.outer(a, a)
        + np.outer(b, b)
        + cos_t * (np.outer(c, c) + np.outer(d, d))
        + sin_t * (np.outer(d, c) - np.outer(c, d))
    )
    return Congruence(Q=Q)


def coordinate_great_circle(i: int, j: int) -> GeodesicCircle:
    """
    Great circle in the coordinate plane of axes i and j (zero-based), with the remaining axes
    ordered so that the frame is positively oriented.
    """
    if i == j or not (0 <= i < 4 and 0 <= j < 4):
        raise DomainError(f"need two distinct axes in 0..3, got {i}, {j}")
    eye = np.eye(4)
    rest = [k for k in range(4) if k not in (i, j)]
    return GeodesicCircle(
        center=SpherePoint(x=eye[rest[0]]), e1=eye[i], e2=eye[j], radius=math.pi / 2
    )

