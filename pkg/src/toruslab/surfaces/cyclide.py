"""
Cyclides: inverse stereographic images of tubes of revolution in ℝ³.

A tube of revolution about the y₃-axis with profile circles of radius r is mapped to S³ by the
inverse stereographic projection from e₄. Equators of S³ correspond to planes through the origin
and to spheres of power -1 about the origin, so sign patterns of the height function can be read
off the ℝ³ picture. A nonzero `dent` modulates the profile radius along the tube angle and
produces elliptic regions.
"""

from __future__ import annotations

import dataclasses
import math
from collections.abc import Mapping
from typing import Any

import numpy as np
import numpy.typing as npt

from toruslab import models
from toruslab.errors import DescriptorError, DomainError
from toruslab.sphere import InverseStereographic
from .base import SurfaceJet, TorusImmersion, require
from .pushforward import push_jet


class Cyclide(TorusImmersion):
    """
    Cyclide with ℝ³ parametrization P(θ, φ) = R·e_r(θ) + ρ(φ)·w(θ, φ) + offset, where
    w = cos φ·e_r + sin φ·e_z and ρ(φ) = r·(1 + dent·cos(lobes·φ)), composed with the inverse
    stereographic projection. The parameters (u, v) of the immersion are (θ, φ).

    With `dent = 0` the surface is a Dupin cyclide.
    """

    descriptor_name = "cyclide"

    def __init__(
        self,
        major: float,
        minor: float,
        offset: npt.ArrayLike = (0.0, 0.0, 0.0),
        dent: float = 0.0,
        lobes: int = 2,
    ) -> None:
        """
        Parameters:
            major:
                Distance R of the profile centers from the y₃-axis.
            minor:
                Profile radius r.
            offset:
                Translation of the tube in ℝ³.
            dent:
                Relative modulation of the profile radius, |dent| < 1.
            lobes:
                Angular frequency of the modulation.

        Raises:
            DomainError:
                If the tube self-intersects or the modulation is out of range.
        """
        if minor <= 0 or major <= 0:
            raise DomainError(f"cyclide radii must be positive, got R={major!r}, r={minor!r}")
        if not abs(dent) < 1.0:
            raise DomainError(f"dent must satisfy |dent| < 1, got {dent!r}")
        if minor * (1.0 + abs(dent)) >= major:
            raise DomainError(f"tube of profile radius up to {minor * (1 + abs(dent)):.4g} self-intersects at R={major!r}")
        if int(lobes) != lobes or lobes < 0:
            raise DomainError(f"lobes must be a non-negative integer, got {lobes!r}")
        self.major = float(major)
        self.minor = float(minor)
        self.offset = np.asarray(offset, dtype=float).reshape(3)
        self.dent = float(dent)
        self.lobes = int(lobes)
        self._sigma = InverseStereographic()

    @classmethod
    def from_tube(cls, core_radius: float, tube_radius: float) -> Cyclide:
        """
        Tube of spherical radius ε about the circle of radius ρ centered at e₃ in the x₁x₂x₃
        great sphere.

        Its ℝ³ picture is the torus with R = sin ρ / cos ε, r = tan ε and axial offset
        cos ρ / cos ε. The Gauss-Kronecker curvature is negative everywhere iff ε > π/2 - ρ.

        Raises:
            DomainError:
                If the radii do not give an embedded tube.
        """
        if not 0.0 < core_radius < math.pi / 2:
            raise DomainError(f"core radius must lie in (0, π/2), got {core_radius!r}")
        if not 0.0 < tube_radius < core_radius:
            raise DomainError(f"tube radius must lie in (0, core radius), got {tube_radius!r}")
        c = math.cos(tube_radius)
        return cls(
            major=math.sin(core_radius) / c,
            minor=math.tan(tube_radius),
            offset=(0.0, 0.0, math.cos(core_radius) / c),
        )

    @property
    def kind(self) -> models.SurfaceKind:
        return models.SurfaceKind.CYCLIDE

    def profile_jet(self, u: npt.ArrayLike, v: npt.ArrayLike) -> SurfaceJet:
        """
        Jet of the ℝ³ tube P(θ, φ), arrays with trailing axis 3.
        """
        th, ph = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        ct, st, cp, sp = np.cos(th), np.sin(th), np.cos(ph), np.sin(ph)
        zero = np.zeros_like(th)
        e_r = np.stack([ct, st, zero], axis=-1)
        e_t = np.stack([-st, ct, zero], axis=-1)
        e_z = np.stack([zero, zero, zero + 1.0], axis=-1)
        cp_, sp_ = cp[..., None], sp[..., None]
        w = cp_ * e_r + sp_ * e_z
        w_t = cp_ * e_t
        w_p = -sp_ * e_r + cp_ * e_z
        w_tt = -cp_ * e_r
        w_tp = -sp_ * e_t
        k = self.lobes
        rho = (self.minor * (1.0 + self.dent * np.cos(k * ph)))[..., None]
        rho_p = (-self.minor * self.dent * k * np.sin(k * ph))[..., None]
        rho_pp = (-self.minor * self.dent * k * k * np.cos(k * ph))[..., None]
        R = self.major
        return SurfaceJet(
            X=R * e_r + rho * w + self.offset,
            X_u=R * e_t + rho * w_t,
            X_v=rho_p * w + rho * w_p,
            X_uu=-R * e_r + rho * w_tt,
            X_uv=rho_p * w_t + rho * w_tp,
            X_vv=rho_pp * w + 2.0 * rho_p * w_p - rho * w,
        )

    def jet(self, u: npt.ArrayLike, v: npt.ArrayLike) -> SurfaceJet:
        return push_jet(self._sigma, self.profile_jet(u, v))

    def eval(self, u: npt.ArrayLike, v: npt.ArrayLike) -> np.ndarray:
        return self._sigma.value(self.profile_jet(u, v).X)

    def parameters(self) -> dict[str, Any]:
        return {
            "kind": "cyclide",
            "major": self.major,
            "minor": self.minor,
            "offset": self.offset.tolist(),
            "dent": self.dent,
            "lobes": self.lobes,
        }

    @classmethod
    def from_parameters(cls, params: Mapping[str, Any]) -> Cyclide:
        """
        Build from `preset = <name>` or from `major`, `minor` and optional `offset`, `dent`,
        `lobes`.

        Raises:
            DescriptorError:
                If the preset is unknown or a required parameter is missing.
        """
        if "preset" in params:
            presets = cyclide_presets()
            name = str(params["preset"])
            if name not in presets:
                raise DescriptorError(f"unknown cyclide preset {name!r}, known: {sorted(presets)}")
            return presets[name].cyclide
        offset = params.get("offset", (0.0, 0.0, 0.0))
        if len(offset) != 3:
            raise DescriptorError(f"cyclide offset needs 3 coordinates, got {offset!r}")
        return cls(
            major=float(require(params, "major", "cyclide")),
            minor=float(require(params, "minor", "cyclide")),
            offset=[float(c) for c in offset],
            dent=float(params.get("dent", 0.0)),
            lobes=int(params.get("lobes", 2)),
        )


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True, eq=False)
class CyclidePreset:
    """
    Named cyclide with a recorded equator pole and the behaviour expected at that pole.

    | Field      | Type                     | Semantics                                             |
    |------------|--------------------------|-------------------------------------------------------|
    | `name`     | `str`                    | Preset name used in `cyclide:<name>` descriptors.     |
    | `cyclide`  | `Cyclide`                | The surface.                                          |
    | `pole`     | `tuple[float, ...]`      | Recorded pole (not necessarily normalized).           |
    | `expected` | `str`                    | What the recorded equator exhibits.                   |
    """

    name: str
    cyclide: Cyclide
    pole: tuple[float, float, float, float]
    expected: str


def cyclide_presets() -> dict[str, CyclidePreset]:
    """
    Named cyclides with their recorded poles.

    | Name      | Surface                                              | Recorded pole         | Behaviour at the pole                 |
    |-----------|------------------------------------------------------|-----------------------|---------------------------------------|
    | `default` | tube of radius 0.5 about a circle of radius 1.2      | (0.3, 0, 1, 0)        | one nullhomotopic curve (type 1)      |
    | `dented`  | R = 1, r = 0.45, dent -0.5, 2 lobes, offset (-1.27, 0, 0) | (1, 0, 0, 0)     | two elliptic caps cut off, 3 pieces   |
    | `far`     | R = 1, r = 0.3, offset (3, 0, 0)                     | (1, 0, 0, 0)          | equator misses the surface            |
    """
    return {
        "default": CyclidePreset(
            name="default",
            cyclide=Cyclide.from_tube(1.2, 0.5),
            pole=(0.3, 0.0, 1.0, 0.0),
            expected="type 1",
        ),
        "dented": CyclidePreset(
            name="dented",
            cyclide=Cyclide(major=1.0, minor=0.45, offset=(-1.27, 0.0, 0.0), dent=-0.5, lobes=2),
            pole=(1.0, 0.0, 0.0, 0.0),
            expected="three components",
        ),
        "far": CyclidePreset(
            name="far",
            cyclide=Cyclide(major=1.0, minor=0.3, offset=(3.0, 0.0, 0.0)),
            pole=(1.0, 0.0, 0.0, 0.0),
            expected="empty intersection",
        ),
    }
