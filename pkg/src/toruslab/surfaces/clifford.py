from __future__ import annotations

import math
from collections.abc import Mapping
from typing import Any

import numpy as np
import numpy.typing as npt

from toruslab import models
from toruslab.errors import DomainError
from toruslab.sphere import SpherePoint
from .base import SurfaceJet, TorusImmersion, circle_product_jet, require


HALF_SQRT2 = math.sqrt(2.0) / 2.0


class HomogeneousTorus(TorusImmersion):
    """
    Homogeneous tube T_r: (u, v) ↦ (cos r cos u, cos r sin u, sin r cos v, sin r sin v).

    Flat for every r, with principal curvatures tan r and -cot r; minimal only at r = π/4,
    where it is the Clifford torus.
    """

    descriptor_name = "homogeneous"

    def __init__(self, r: float) -> None:
        """
        Parameters:
            r:
                Tube radius in (0, π/2).

        Raises:
            DomainError:
                If r lies outside (0, π/2).
        """
        if not 0.0 < r < math.pi / 2:
            raise DomainError(f"homogeneous tube radius must lie in (0, π/2), got {r!r}")
        self.r = float(r)
        self._a = math.cos(self.r)
        self._b = math.sin(self.r)

    @property
    def kind(self) -> models.SurfaceKind:
        return models.SurfaceKind.HOMOGENEOUS

    def jet(self, u: npt.ArrayLike, v: npt.ArrayLike) -> SurfaceJet:
        return circle_product_jet(self._a, self._b, u, v)

    def normal_jet(self, u: npt.ArrayLike, v: npt.ArrayLike) -> SurfaceJet:
        # N = (sin r cos u, sin r sin u, -cos r cos v, -cos r sin v)
        return circle_product_jet(self._b, -self._a, u, v)

    def parameters(self) -> dict[str, Any]:
        return {"kind": "homogeneous", "r": self.r}

    @classmethod
    def from_parameters(cls, params: Mapping[str, Any]) -> HomogeneousTorus:
        return cls(float(require(params, "r", "homogeneous")))


class CliffordTorus(HomogeneousTorus):
    """
    The Clifford torus (√2/2)(cos u, sin u, cos v, sin v), minimal and flat, with principal
    curvatures 1 and -1 along the u and v lines.
    """

    descriptor_name = "clifford"

    def __init__(self) -> None:
        super().__init__(math.pi / 4)
        self._a = HALF_SQRT2
        self._b = HALF_SQRT2

    @property
    def kind(self) -> models.SurfaceKind:
        return models.SurfaceKind.CLIFFORD

    def parameters(self) -> dict[str, Any]:
        return {"kind": "clifford"}

    @classmethod
    def from_parameters(cls, params: Mapping[str, Any]) -> CliffordTorus:
        return cls()


def clifford_eval(u: float, v: float) -> SpherePoint:
    """
    Point (√2/2)(cos u, sin u, cos v, sin v) of the Clifford torus.
    """
    return SpherePoint(x=HALF_SQRT2 * np.array([math.cos(u), math.sin(u), math.cos(v), math.sin(v)]))


def homogeneous_eval(r: float, u: float, v: float) -> SpherePoint:
    """
    Point (cos r cos u, cos r sin u, sin r cos v, sin r sin v) of the homogeneous tube T_r.

    Raises:
        DomainError:
            If r lies outside (0, π/2).
    """
    if not 0.0 < r < math.pi / 2:
        raise DomainError(f"homogeneous tube radius must lie in (0, π/2), got {r!r}")
    a, b = math.cos(r), math.sin(r)
    return SpherePoint(x=np.array([a * math.cos(u), a * math.sin(u), b * math.cos(v), b * math.sin(v)]))
