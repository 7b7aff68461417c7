"""
Maps of the annulus A₂ = {x ∈ ℝ⁴ : 1/2 < |x| < 2} with first and second partials.
"""

from __future__ import annotations

import abc

import numpy as np
import numpy.typing as npt

from toruslab import models
from .maps import IdentityMap, SphereMap


INNER_RADIUS = 0.5
OUTER_RADIUS = 2.0


class AnnulusMap(abc.ABC):
    """
    Abstract map F: A₂ → ℝ⁴ with `value` (..., 4), `jacobian` (..., 4, 4) with
    `jacobian[..., i, j] = D^j F_i`, and `hessian` (..., 4, 4, 4) with
    `hessian[..., i, j, k] = D^{jk} F_i`.
    """

    provenance: models.MapProvenance = models.MapProvenance.GENERAL

    @abc.abstractmethod
    def value(self, x: npt.ArrayLike) -> np.ndarray:
        pass

    @abc.abstractmethod
    def jacobian(self, x: npt.ArrayLike) -> np.ndarray:
        pass

    @abc.abstractmethod
    def hessian(self, x: npt.ArrayLike) -> np.ndarray:
        pass

    def __sub__(self, other: AnnulusMap) -> AnnulusMap:
        return DifferenceMap(self, other)

    def __matmul__(self, other: AnnulusMap) -> AnnulusMap:
        return ComposedAnnulusMap(self, other)


class CanonicalExtension(AnnulusMap):
    """
    Canonical extension F(x) = |x|·ξ(x/|x|) of a sphere map ξ.

    With y = x/|x| and P = I - yyᵀ the partials are

        D^j F = y_j·ξ(y) + (Dξ·P)_j,
        D^{jk} F = (P_jk·(ξ(y) - Dξ·y) + D²ξ[P_j, P_k]) / |x|,

    independent of how ξ is extended off S³.
    """

    provenance = models.MapProvenance.CANONICAL

    def __init__(self, sphere_map: SphereMap) -> None:
        self.sphere_map = sphere_map

    @staticmethod
    def _radial(x: npt.ArrayLike) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        x = np.asarray(x, dtype=float)
        r = np.linalg.norm(x, axis=-1)
        y = x / r[..., None]
        P = np.eye(4) - np.einsum("...i,...j->...ij", y, y)
        return r, y, P

    def value(self, x: npt.ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        r = np.linalg.norm(x, axis=-1)
        return r[..., None] * self.sphere_map.value(x / r[..., None])

    def jacobian(self, x: npt.ArrayLike) -> np.ndarray:
        _, y, P = self._radial(x)
        xi = self.sphere_map.value(y)
        return np.einsum("...i,...j->...ij", xi, y) + self.sphere_map.jacobian(y) @ P

    def hessian(self, x: npt.ArrayLike) -> np.ndarray:
        r, y, P = self._radial(x)
        xi = self.sphere_map.value(y)
        J = self.sphere_map.jacobian(y)
        radial = xi - np.einsum("...il,...l->...i", J, y)
        H = np.einsum("...i,...jk->...ijk", radial, P) + np.einsum(
            "...ilm,...lj,...mk->...ijk", self.sphere_map.hessian(y), P, P
        )
        return H / r[..., None, None, None]

    def inverse(self) -> CanonicalExtension:
        """
        Canonical extension of the inverse sphere map.

        Raises:
            InverseUnavailableError:
                If the sphere map has no evaluable inverse.
        """
        return CanonicalExtension(self.sphere_map.inverse())

    def __repr__(self) -> str:
        return f"CanonicalExtension({self.sphere_map!r})"


def canonical_extend(xi: SphereMap) -> CanonicalExtension:
    """
    Extend a sphere diffeomorphism to A₂ by X(r·v) = r·ξ(v).
    """
    return CanonicalExtension(xi)


def identity_annulus() -> CanonicalExtension:
    """
    The identity I of A₂, built as the canonical extension of the identity of S³ so that
    X - I vanishes exactly for X = I.
    """
    return CanonicalExtension(IdentityMap())


class SineShearMap(AnnulusMap):
    """
    F(x) = x + ε·(sin(k·x₁), 0, 0, 0). The Hessian field has Lipschitz constant ε·k³.
    """

    def __init__(self, epsilon: float, k: float) -> None:
        self.epsilon = float(epsilon)
        self.k = float(k)

    @property
    def hessian_lipschitz(self) -> float:
        return abs(self.epsilon) * abs(self.k) ** 3

    def value(self, x: npt.ArrayLike) -> np.ndarray:
        out = np.array(x, dtype=float)
        out[..., 0] += self.epsilon * np.sin(self.k * out[..., 0])
        return out

    def jacobian(self, x: npt.ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        J = np.broadcast_to(np.eye(4), x.shape[:-1] + (4, 4)).copy()
        J[..., 0, 0] += self.epsilon * self.k * np.cos(self.k * x[..., 0])
        return J

    def hessian(self, x: npt.ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        H = np.zeros(x.shape[:-1] + (4, 4, 4))
        H[..., 0, 0, 0] = -self.epsilon * self.k**2 * np.sin(self.k * x[..., 0])
        return H

    def __repr__(self) -> str:
        return f"SineShearMap(epsilon={self.epsilon!r}, k={self.k!r})"


class ScaledMap(AnnulusMap):
    """
    F(x) = (1 + ε·sin x₁·cos x₂)·G(x) for an annulus map G.
    """

    def __init__(self, base: AnnulusMap, epsilon: float) -> None:
        self.base = base
        self.epsilon = float(epsilon)

    def _scale(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        eps = self.epsilon
        s1, c1 = np.sin(x[..., 0]), np.cos(x[..., 0])
        s2, c2 = np.sin(x[..., 1]), np.cos(x[..., 1])
        s = 1.0 + eps * s1 * c2
        ds = np.zeros_like(x)
        ds[..., 0] = eps * c1 * c2
        ds[..., 1] = -eps * s1 * s2
        d2s = np.zeros(x.shape[:-1] + (4, 4))
        d2s[..., 0, 0] = -eps * s1 * c2
        d2s[..., 1, 1] = -eps * s1 * c2
        d2s[..., 0, 1] = d2s[..., 1, 0] = -eps * c1 * s2
        return s, ds, d2s

    def value(self, x: npt.ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        s, _, _ = self._scale(x)
        return s[..., None] * self.base.value(x)

    def jacobian(self, x: npt.ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        s, ds, _ = self._scale(x)
        return s[..., None, None] * self.base.jacobian(x) + np.einsum("...i,...j->...ij", self.base.value(x), ds)

    def hessian(self, x: npt.ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        s, ds, d2s = self._scale(x)
        G, JG, HG = self.base.value(x), self.base.jacobian(x), self.base.hessian(x)
        cross = np.einsum("...ij,...k->...ijk", JG, ds)
        return (
            s[..., None, None, None] * HG
            + cross
            + np.swapaxes(cross, -1, -2)
            + np.einsum("...i,...jk->...ijk", G, d2s)
        )

    def __repr__(self) -> str:
        return f"ScaledMap({self.base!r}, epsilon={self.epsilon!r})"


class DifferenceMap(AnnulusMap):
    """
    Pointwise difference F - G.
    """

    def __init__(self, F: AnnulusMap, G: AnnulusMap) -> None:
        self.F = F
        self.G = G

    def value(self, x: npt.ArrayLike) -> np.ndarray:
        return self.F.value(x) - self.G.value(x)

    def jacobian(self, x: npt.ArrayLike) -> np.ndarray:
        return self.F.jacobian(x) - self.G.jacobian(x)

    def hessian(self, x: npt.ArrayLike) -> np.ndarray:
        return self.F.hessian(x) - self.G.hessian(x)

    def __repr__(self) -> str:
        return f"DifferenceMap({self.F!r}, {self.G!r})"


class ComposedAnnulusMap(AnnulusMap):
    """
    Composition outer∘inner; inner must map into the domain of outer.
    """

    def __init__(self, outer: AnnulusMap, inner: AnnulusMap) -> None:
        self.outer = outer
        self.inner = inner
        if outer.provenance is inner.provenance is models.MapProvenance.CANONICAL:
            self.provenance = models.MapProvenance.CANONICAL

    def value(self, x: npt.ArrayLike) -> np.ndarray:
        return self.outer.value(self.inner.value(x))

    def jacobian(self, x: npt.ArrayLike) -> np.ndarray:
        return self.outer.jacobian(self.inner.value(x)) @ self.inner.jacobian(x)

    def hessian(self, x: npt.ArrayLike) -> np.ndarray:
        y = self.inner.value(x)
        Ji = self.inner.jacobian(x)
        return np.einsum("...ilm,...lj,...mk->...ijk", self.outer.hessian(y), Ji, Ji) + np.einsum(
            "...il,...ljk->...ijk", self.outer.jacobian(y), self.inner.hessian(x)
        )

    def __repr__(self) -> str:
        return f"ComposedAnnulusMap({self.outer!r}, {self.inner!r})"
