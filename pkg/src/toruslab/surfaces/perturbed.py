from __future__ import annotations

import dataclasses
from collections.abc import Mapping
from typing import Any

import numpy as np
import numpy.typing as npt

from toruslab import models
from toruslab.errors import DescriptorError, DomainError, PerturbationTooLargeError
from .base import SurfaceJet, TorusImmersion, require
from .curvature import check_immersion


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True)
class TrigBump:
    """
    Doubly periodic trigonometric polynomial b(u, v) = Σ amplitude·cos(m u + k v + phase).

    | Field   | Type                                       | Semantics                                  |
    |---------|--------------------------------------------|--------------------------------------------|
    | `terms` | `tuple[tuple[int, int, float, float], ...]` | Rows (m, k, amplitude, phase).            |
    """

    terms: tuple[tuple[int, int, float, float], ...] = ()

    def __post_init__(self) -> None:
        cleaned = []
        for row in self.terms:
            if len(row) != 4:
                raise DomainError(f"bump term needs (m, k, amplitude, phase), got {row!r}")
            m, k, amplitude, phase = row
            if int(m) != m or int(k) != k:
                raise DomainError(f"bump frequencies must be integers, got m={m!r}, k={k!r}")
            cleaned.append((int(m), int(k), float(amplitude), float(phase)))
        object.__setattr__(self, "terms", tuple(cleaned))

    @classmethod
    def cosine(cls, amplitude: float, m: int = 1, k: int = 0) -> TrigBump:
        return cls(terms=((m, k, amplitude, 0.0),))

    @property
    def amplitude(self) -> float:
        return float(sum(abs(a) for _, _, a, _ in self.terms))

    def derivatives(self, u: npt.ArrayLike, v: npt.ArrayLike) -> tuple[np.ndarray, ...]:
        """
        Return b, b_u, b_v, b_uu, b_uv, b_vv on the broadcast grid of u and v.
        """
        u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        out = [np.zeros(u.shape) for _ in range(6)]
        for m, k, amplitude, phase in self.terms:
            arg = m * u + k * v + phase
            c = amplitude * np.cos(arg)
            s = amplitude * np.sin(arg)
            out[0] += c
            out[1] -= m * s
            out[2] -= k * s
            out[3] -= m * m * c
            out[4] -= m * k * c
            out[5] -= k * k * c
        return tuple(out)


class PerturbedTorus(TorusImmersion):
    """
    Normal perturbation of a base immersion along great circles:
    Y = cos b·X + sin b·N, the exponential map of S³ applied to b(u, v)·N(u, v).

    The bump is a trigonometric polynomial, so all derivatives are analytic. The base must expose
    closed-form normal derivatives through `normal_jet`.
    """

    descriptor_name = "perturbed"

    def __init__(self, base: TorusImmersion, bump: TrigBump, check_resolution: int = 64) -> None:
        """
        Parameters:
            base:
                Immersion to perturb.
            bump:
                Normal displacement field in radians.
            check_resolution:
                Grid size of the post-hoc immersion check.

        Raises:
            DomainError:
                If the base has no closed-form normal derivatives.
            PerturbationTooLargeError:
                If the perturbed map fails the immersion check.
        """
        base.normal_jet(0.0, 0.0)
        self.base = base
        self.bump = bump
        defect = check_immersion(self, check_resolution)
        if defect <= 1e-10:
            raise PerturbationTooLargeError(
                f"perturbation with amplitude {bump.amplitude:.3g} is not an immersion "
                f"(min EG - F² = {defect:.3e} on a {check_resolution}² grid)"
            )

    @property
    def kind(self) -> models.SurfaceKind:
        return models.SurfaceKind.PERTURBED

    def jet(self, u: npt.ArrayLike, v: npt.ArrayLike) -> SurfaceJet:
        X = self.base.jet(u, v)
        N = self.base.normal_jet(u, v)
        b, b_u, b_v, b_uu, b_uv, b_vv = (w[..., None] for w in self.bump.derivatives(u, v))
        C, S = np.cos(b), np.sin(b)
        Y = C * X.X + S * N.X
        Z = C * N.X - S * X.X
        tilt_u = C * N.X_u - S * X.X_u
        tilt_v = C * N.X_v - S * X.X_v
        # Y_ab = C X_ab + S N_ab + b_b (C N_a - S X_a) + b_a (C N_b - S X_b) + b_ab Z - b_a b_b Y
        return SurfaceJet(
            X=Y,
            X_u=C * X.X_u + S * N.X_u + b_u * Z,
            X_v=C * X.X_v + S * N.X_v + b_v * Z,
            X_uu=C * X.X_uu + S * N.X_uu + 2.0 * b_u * tilt_u + b_uu * Z - b_u * b_u * Y,
            X_uv=C * X.X_uv + S * N.X_uv + b_v * tilt_u + b_u * tilt_v + b_uv * Z - b_u * b_v * Y,
            X_vv=C * X.X_vv + S * N.X_vv + 2.0 * b_v * tilt_v + b_vv * Z - b_v * b_v * Y,
        )

    def parameters(self) -> dict[str, Any]:
        return {
            "kind": "perturbed",
            "base": self.base.parameters(),
            "bump": [list(term) for term in self.bump.terms],
        }

    @classmethod
    def from_parameters(cls, params: Mapping[str, Any]) -> PerturbedTorus:
        """
        Build from an already resolved `base` immersion and `bump` rows (m, k, amplitude, phase).
        """
        base = require(params, "base", "perturbed")
        if not isinstance(base, TorusImmersion):
            raise DescriptorError(f"perturbed descriptor needs a resolved base immersion, got {base!r}")
        rows = require(params, "bump", "perturbed")
        try:
            bump = TrigBump(terms=tuple(tuple(row) for row in rows))
        except (TypeError, DomainError) as exc:
            raise DescriptorError(f"invalid bump rows {rows!r}: {exc}") from exc
        return cls(base, bump)


def perturb_normal(M: TorusImmersion, bump: TrigBump) -> TorusImmersion:
    """
    Move an immersion along its unit normal by a bump field.

    Parameters:
        M:
            Base immersion with closed-form normal derivatives.
        bump:
            Trigonometric bump b(u, v), in radians along the normal great circles.

    Returns:
        The immersion (u, v) ↦ cos b·X + sin b·N; the base itself if the bump has no terms.

    Raises:
        PerturbationTooLargeError:
            If the result fails the immersion check on a grid.
    """
    if not bump.terms:
        return M
    return PerturbedTorus(M, bump)
