from __future__ import annotations

from typing import Any, Protocol

import numpy as np
import numpy.typing as npt

from toruslab import models
from .base import SurfaceJet, TorusImmersion


class AmbientMap(Protocol):
    """
    Map between Euclidean spaces evaluable with its first and second partials.

    For inputs of shape `(..., m)`, `value` returns `(..., 4)`, `jacobian` returns `(..., 4, m)`
    and `hessian` returns `(..., 4, m, m)` with `hessian[..., i, j, k] = ∂²G_i / ∂x_j ∂x_k`.
    """

    def value(self, x: npt.ArrayLike) -> np.ndarray: ...

    def jacobian(self, x: npt.ArrayLike) -> np.ndarray: ...

    def hessian(self, x: npt.ArrayLike) -> np.ndarray: ...


def push_jet(G: AmbientMap, jet: SurfaceJet) -> SurfaceJet:
    """
    Jet of G∘X by the chain rule: Y_a = J·X_a, Y_ab = J·X_ab + Hess[X_a, X_b].
    """
    J = G.jacobian(jet.X)
    H = G.hessian(jet.X)

    def first(w: np.ndarray) -> np.ndarray:
        return np.einsum("...ij,...j->...i", J, w)

    def second(w_ab: np.ndarray, w_a: np.ndarray, w_b: np.ndarray) -> np.ndarray:
        return first(w_ab) + np.einsum("...ijk,...j,...k->...i", H, w_a, w_b)

    return SurfaceJet(
        X=G.value(jet.X),
        X_u=first(jet.X_u),
        X_v=first(jet.X_v),
        X_uu=second(jet.X_uu, jet.X_u, jet.X_u),
        X_uv=second(jet.X_uv, jet.X_u, jet.X_v),
        X_vv=second(jet.X_vv, jet.X_v, jet.X_v),
    )


class PushforwardTorus(TorusImmersion):
    """
    Composition G∘X of an ambient map with a base immersion.

    Used for congruent copies Q∘M and for the pushed-forward Clifford torus ξ∘T of a sphere
    diffeomorphism ξ.
    """

    def __init__(self, ambient_map: AmbientMap, base: TorusImmersion) -> None:
        self.ambient_map = ambient_map
        self.base = base

    @property
    def kind(self) -> models.SurfaceKind:
        return models.SurfaceKind.PUSHFORWARD

    def jet(self, u: npt.ArrayLike, v: npt.ArrayLike) -> SurfaceJet:
        return push_jet(self.ambient_map, self.base.jet(u, v))

    def eval(self, u: npt.ArrayLike, v: npt.ArrayLike) -> np.ndarray:
        return self.ambient_map.value(self.base.eval(u, v))

    def parameters(self) -> dict[str, Any]:
        return {
            "kind": "pushforward",
            "map": type(self.ambient_map).__name__,
            "base": self.base.parameters(),
        }
