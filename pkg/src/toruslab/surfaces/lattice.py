"""
The lattice p^{jk}_n on the Clifford torus and its lines of curvature φ^k_n, ψ^k_n.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np
import numpy.typing as npt

from toruslab import models
from toruslab.errors import DomainError
from toruslab.sphere import GeodesicCircle, SpherePoint
from .clifford import HALF_SQRT2


def lattice_points(n: int) -> list[SpherePoint]:
    """
    The 4n² points p^{jk}_n = (√2/2)(cos πj/n, sin πj/n, cos πk/n, sin πk/n), 0 ≤ j, k < 2n.

    Points are ordered with j outer and k inner.

    Raises:
        DomainError:
            If n < 1.
    """
    angles = lattice_angles(n)
    return [
        SpherePoint(x=HALF_SQRT2 * np.array([math.cos(a), math.sin(a), math.cos(b), math.sin(b)]))
        for a in angles
        for b in angles
    ]


def lattice_angles(n: int) -> np.ndarray:
    if int(n) != n or n < 1:
        raise DomainError(f"lattice order must be a positive integer, got {n!r}")
    return np.pi * np.arange(2 * n) / n


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True)
class LineOfCurvature:
    """
    Line of curvature of the Clifford torus through the lattice.

    φ^k_n(θ) = (√2/2)(cos πk/n, sin πk/n, cos θ, sin θ) keeps the first angle fixed;
    ψ^k_n(θ) = (√2/2)(cos θ, sin θ, cos πk/n, sin πk/n) keeps the second angle fixed.
    Both are circles of intrinsic radius π/4 and curvature 1.

    | Field    | Type                 | Semantics                          |
    |----------|----------------------|------------------------------------|
    | `n`      | `int`                | Lattice order.                     |
    | `k`      | `int`                | Index in [0, 2n).                  |
    | `family` | `models.CurveFamily` | PHI or PSI.                        |
    """

    n: int
    k: int
    family: models.CurveFamily

    @property
    def angle(self) -> float:
        return math.pi * self.k / self.n

    def parameters(self, theta: npt.ArrayLike) -> tuple[np.ndarray, np.ndarray]:
        """
        Parameter coordinates (u, v) of the Clifford torus along the curve.
        """
        theta = np.asarray(theta, dtype=float)
        fixed = np.full_like(theta, self.angle)
        if self.family is models.CurveFamily.PHI:
            return fixed, theta
        return theta, fixed

    def point(self, theta: npt.ArrayLike) -> np.ndarray:
        u, v = self.parameters(theta)
        return HALF_SQRT2 * np.stack([np.cos(u), np.sin(u), np.cos(v), np.sin(v)], axis=-1)

    def velocity(self, theta: npt.ArrayLike) -> np.ndarray:
        u, v = self.parameters(theta)
        du, dv = (0.0, 1.0) if self.family is models.CurveFamily.PHI else (1.0, 0.0)
        return HALF_SQRT2 * np.stack(
            [-du * np.sin(u), du * np.cos(u), -dv * np.sin(v), dv * np.cos(v)], axis=-1
        )

    def acceleration(self, theta: npt.ArrayLike) -> np.ndarray:
        u, v = self.parameters(theta)
        du, dv = (0.0, 1.0) if self.family is models.CurveFamily.PHI else (1.0, 0.0)
        return -HALF_SQRT2 * np.stack(
            [du * np.cos(u), du * np.sin(u), dv * np.cos(v), dv * np.sin(v)], axis=-1
        )

    @property
    def circle(self) -> GeodesicCircle:
        a = self.angle
        if self.family is models.CurveFamily.PHI:
            center, e1, e2 = (math.cos(a), math.sin(a), 0.0, 0.0), (0.0, 0.0, 1.0, 0.0), (0.0, 0.0, 0.0, 1.0)
        else:
            center, e1, e2 = (0.0, 0.0, math.cos(a), math.sin(a)), (1.0, 0.0, 0.0, 0.0), (0.0, 1.0, 0.0, 0.0)
        return GeodesicCircle(
            center=SpherePoint.from_array(center), e1=np.array(e1), e2=np.array(e2), radius=math.pi / 4
        )


def line_of_curvature(n: int, k: int, family: models.CurveFamily) -> LineOfCurvature:
    """
    The curve φ^k_n or ψ^k_n.

    Raises:
        DomainError:
            If n < 1 or k lies outside [0, 2n).
    """
    if int(n) != n or n < 1:
        raise DomainError(f"lattice order must be a positive integer, got {n!r}")
    if int(k) != k or not 0 <= k < 2 * n:
        raise DomainError(f"line index must lie in [0, {2 * n}), got {k!r}")
    return LineOfCurvature(n=int(n), k=int(k), family=family)
