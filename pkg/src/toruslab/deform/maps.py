"""
Diffeomorphisms of S³ with first and second derivatives.

Every map is evaluated through a smooth extension to a neighbourhood of S³ in ℝ⁴: `value`
returns `(..., 4)`, `jacobian` returns `(..., 4, 4)` and `hessian` returns `(..., 4, 4, 4)` with
`hessian[..., i, j, k] = ∂²ξ_i / ∂x_j ∂x_k`. Quantities computed on S³ (pushforward curvature,
canonical extensions) do not depend on the choice of extension.
"""

from __future__ import annotations

import abc
import logging

import numpy as np
import numpy.typing as npt

from toruslab.errors import ConvergenceError, DomainError, InverseUnavailableError, SingularityError
from toruslab.sphere import Congruence


logger = logging.getLogger(__name__)

NEWTON_TOLERANCE = 1e-13
NEWTON_ITERATIONS = 50

_E1 = np.array([1.0, 0.0, 0.0, 0.0])
_E2 = np.array([0.0, 1.0, 0.0, 0.0])


class SphereMap(abc.ABC):
    """
    Abstract diffeomorphism ξ of S³ with value, Jacobian and Hessian.

    Subclasses with a closed-form inverse override `inverse`; the default builds a
    `NumericalInverse` and checks it on a test grid.
    """

    @abc.abstractmethod
    def value(self, x: npt.ArrayLike) -> np.ndarray:
        pass

    @abc.abstractmethod
    def jacobian(self, x: npt.ArrayLike) -> np.ndarray:
        pass

    @abc.abstractmethod
    def hessian(self, x: npt.ArrayLike) -> np.ndarray:
        pass

    def inverse(self) -> SphereMap:
        """
        Inverse map, solved numerically.

        Raises:
            InverseUnavailableError:
                If Newton's method fails or the differential is singular on the test grid.
        """
        inverse = NumericalInverse(self)
        inverse.verify()
        return inverse

    def __matmul__(self, other: SphereMap) -> SphereMap:
        return ComposedMap(outer=self, inner=other)


class IdentityMap(SphereMap):
    def value(self, x: npt.ArrayLike) -> np.ndarray:
        return np.array(x, dtype=float)

    def jacobian(self, x: npt.ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.broadcast_to(np.eye(4), x.shape[:-1] + (4, 4)).copy()

    def hessian(self, x: npt.ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.zeros(x.shape[:-1] + (4, 4, 4))

    def inverse(self) -> IdentityMap:
        return self

    def __repr__(self) -> str:
        return "IdentityMap()"


class OrthogonalMap(SphereMap):
    """
    Congruence x ↦ Qx viewed as a sphere map.
    """

    def __init__(self, congruence: Congruence | npt.ArrayLike) -> None:
        self.congruence = congruence if isinstance(congruence, Congruence) else Congruence(Q=congruence)

    def value(self, x: npt.ArrayLike) -> np.ndarray:
        return self.congruence.value(x)

    def jacobian(self, x: npt.ArrayLike) -> np.ndarray:
        return self.congruence.jacobian(x)

    def hessian(self, x: npt.ArrayLike) -> np.ndarray:
        return self.congruence.hessian(x)

    def inverse(self) -> OrthogonalMap:
        return OrthogonalMap(self.congruence.inverse())

    def __repr__(self) -> str:
        return f"OrthogonalMap({self.congruence!r})"


class MobiusBoost(SphereMap):
    """
    Conformal boost of S³ along a unit axis a with rapidity s:

        ξ(x) = (x + (sinh s + (cosh s - 1)⟨x, a⟩)·a) / (cosh s + sinh s·⟨x, a⟩).

    The boost pushes points towards a for s > 0; its inverse has rapidity -s.
    """

    def __init__(self, axis: npt.ArrayLike, s: float) -> None:
        a = np.asarray(axis, dtype=float).reshape(4)
        norm = float(np.linalg.norm(a))
        if norm < 1e-12:
            raise DomainError("boost axis must be a nonzero 4-vector")
        self.axis = a / norm
        self.s = float(s)
        self._ch = np.cosh(self.s)
        self._sh = np.sinh(self.s)

    def _parts(self, x: npt.ArrayLike) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        x = np.asarray(x, dtype=float)
        t = x @ self.axis
        N = x + (self._sh + (self._ch - 1.0) * t)[..., None] * self.axis
        D = self._ch + self._sh * t
        return x, N, D

    def value(self, x: npt.ArrayLike) -> np.ndarray:
        _, N, D = self._parts(x)
        return N / D[..., None]

    def jacobian(self, x: npt.ArrayLike) -> np.ndarray:
        x, N, D = self._parts(x)
        a = self.axis
        dN = np.eye(4) + (self._ch - 1.0) * np.outer(a, a)
        return dN / D[..., None, None] - self._sh * np.einsum("...i,j->...ij", N, a) / (D**2)[..., None, None]

    def hessian(self, x: npt.ArrayLike) -> np.ndarray:
        x, N, D = self._parts(x)
        a = self.axis
        sh = self._sh
        dN = np.eye(4) + (self._ch - 1.0) * np.outer(a, a)
        first = np.einsum("ij,k->ijk", dN, a)
        first = -sh * (first + first.transpose(0, 2, 1))
        second = 2.0 * sh * sh * np.einsum("...i,j,k->...ijk", N, a, a)
        return first / (D**2)[..., None, None, None] + second / (D**3)[..., None, None, None]

    def inverse(self) -> MobiusBoost:
        return MobiusBoost(self.axis, -self.s)

    def __repr__(self) -> str:
        return f"MobiusBoost(axis={np.array2string(self.axis, precision=6)}, s={self.s!r})"


class TwistMap(SphereMap):
    """
    Twist (z₁, z₂) ↦ (exp(iε|z₂|²)·z₁, z₂) in complex coordinates z₁ = x₁ + ix₂, z₂ = x₃ + ix₄.

    Each Hopf-type torus |z₁| = const is rotated rigidly, so the Clifford torus is mapped onto
    itself while its parametrization is sheared.
    """

    def __init__(self, epsilon: float) -> None:
        self.epsilon = float(epsilon)

    def _phase(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        phi = self.epsilon * (x[..., 2] ** 2 + x[..., 3] ** 2)
        g = np.zeros_like(x)
        g[..., 2] = 2.0 * self.epsilon * x[..., 2]
        g[..., 3] = 2.0 * self.epsilon * x[..., 3]
        return np.cos(phi), np.sin(phi), g

    def value(self, x: npt.ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        c, s, _ = self._phase(x)
        out = x.copy()
        out[..., 0] = c * x[..., 0] - s * x[..., 1]
        out[..., 1] = s * x[..., 0] + c * x[..., 1]
        return out

    def jacobian(self, x: npt.ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        c, s, g = self._phase(x)
        y = self.value(x)
        J = np.broadcast_to(np.eye(4), x.shape[:-1] + (4, 4)).copy()
        J[..., 0, :] = c[..., None] * _E1 - s[..., None] * _E2 - y[..., 1, None] * g
        J[..., 1, :] = s[..., None] * _E1 + c[..., None] * _E2 + y[..., 0, None] * g
        return J

    def hessian(self, x: npt.ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        c, s, g = self._phase(x)
        y = self.value(x)
        Phi = np.diag([0.0, 0.0, 2.0 * self.epsilon, 2.0 * self.epsilon])

        def sym(e: np.ndarray) -> np.ndarray:
            outer = np.einsum("j,...k->...jk", e, g)
            return outer + np.swapaxes(outer, -1, -2)

        gg = np.einsum("...j,...k->...jk", g, g)
        H = np.zeros(x.shape[:-1] + (4, 4, 4))
        H[..., 0, :, :] = (
            -s[..., None, None] * sym(_E1)
            - c[..., None, None] * sym(_E2)
            - y[..., 0, None, None] * gg
            - y[..., 1, None, None] * Phi
        )
        H[..., 1, :, :] = (
            c[..., None, None] * sym(_E1)
            - s[..., None, None] * sym(_E2)
            - y[..., 1, None, None] * gg
            + y[..., 0, None, None] * Phi
        )
        return H

    def inverse(self) -> TwistMap:
        return TwistMap(-self.epsilon)

    def __repr__(self) -> str:
        return f"TwistMap(epsilon={self.epsilon!r})"


class NormalBumpMap(SphereMap):
    """
    Bump ξ(y) = normalize(y + ε·y₁·W(y)) with the tangent field W = (z₁|z₂|², -z₂|z₁|²).

    On the Clifford torus W is half the unit normal, so ξ moves the torus off itself by about
    ε·y₁/2 along its normal. The inverse is solved numerically.
    """

    _SIGN = np.array([1.0, 1.0, -1.0, -1.0])
    # row i selects the coordinates entering |z|² of the other complex factor
    _MASK = np.array(
        [[0.0, 0.0, 1.0, 1.0], [0.0, 0.0, 1.0, 1.0], [1.0, 1.0, 0.0, 0.0], [1.0, 1.0, 0.0, 0.0]]
    )

    def __init__(self, epsilon: float) -> None:
        self.epsilon = float(epsilon)

    def _field(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        sign, mask, eye = self._SIGN, self._MASK, np.eye(4)
        rho = (x * x) @ mask.T
        W = sign * x * rho
        dW = sign[:, None] * (eye * rho[..., :, None] + 2.0 * x[..., :, None] * mask * x[..., None, :])
        t1 = np.einsum("ij,ik,...k->...ijk", eye, mask, x)
        d2W = 2.0 * sign[:, None, None] * (
            t1 + np.swapaxes(t1, -1, -2) + np.einsum("...i,ij,jk->...ijk", x, mask, eye)
        )
        return W, dW, d2W

    def _lifted(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        eps = self.epsilon
        W, dW, d2W = self._field(x)
        A = x[..., 0]
        G = x + eps * A[..., None] * W
        JG = np.eye(4) + eps * (np.einsum("...i,j->...ij", W, _E1) + A[..., None, None] * dW)
        HG = eps * (
            np.einsum("...ik,j->...ijk", dW, _E1)
            + np.einsum("...ij,k->...ijk", dW, _E1)
            + A[..., None, None, None] * d2W
        )
        return G, JG, HG

    def value(self, x: npt.ArrayLike) -> np.ndarray:
        G, _, _ = self._lifted(np.asarray(x, dtype=float))
        return G / np.linalg.norm(G, axis=-1, keepdims=True)

    def jacobian(self, x: npt.ArrayLike) -> np.ndarray:
        return normalized_jet(*self._lifted(np.asarray(x, dtype=float)))[1]

    def hessian(self, x: npt.ArrayLike) -> np.ndarray:
        return normalized_jet(*self._lifted(np.asarray(x, dtype=float)))[2]

    def __repr__(self) -> str:
        return f"NormalBumpMap(epsilon={self.epsilon!r})"


class ComposedMap(SphereMap):
    """
    Composition outer∘inner by the chain rule.
    """

    def __init__(self, outer: SphereMap, inner: SphereMap) -> None:
        self.outer = outer
        self.inner = inner

    def value(self, x: npt.ArrayLike) -> np.ndarray:
        return self.outer.value(self.inner.value(x))

    def jacobian(self, x: npt.ArrayLike) -> np.ndarray:
        y = self.inner.value(x)
        return self.outer.jacobian(y) @ self.inner.jacobian(x)

    def hessian(self, x: npt.ArrayLike) -> np.ndarray:
        y = self.inner.value(x)
        Ji = self.inner.jacobian(x)
        return np.einsum("...ilm,...lj,...mk->...ijk", self.outer.hessian(y), Ji, Ji) + np.einsum(
            "...il,...ljk->...ijk", self.outer.jacobian(y), self.inner.hessian(x)
        )

    def inverse(self) -> SphereMap:
        return ComposedMap(outer=self.inner.inverse(), inner=self.outer.inverse())

    def __repr__(self) -> str:
        return f"ComposedMap({self.outer!r}, {self.inner!r})"


class NumericalInverse(SphereMap):
    """
    Inverse η = ξ⁻¹ of a sphere map, solved pointwise by Newton's method on S³.

    η is extended to ℝ⁴ \\ {0} by η(x) = η(x/|x|). Its derivatives follow from the inverse
    function theorem on the tangent spaces of S³ and from degree-0 homogeneity along the radius.
    """

    def __init__(self, forward: SphereMap) -> None:
        self.forward = forward

    def solve(self, y: np.ndarray) -> np.ndarray:
        """
        Points p ∈ S³ with ξ(p) = y, for unit vectors y.

        Raises:
            ConvergenceError:
                If the residual stays above 1e-13 after 50 iterations.
        """
        p = y.copy()
        residual = np.inf
        for _ in range(NEWTON_ITERATIONS):
            r = self.forward.value(p) - y
            residual = float(np.max(np.abs(r))) if r.size else 0.0
            if residual < NEWTON_TOLERANCE:
                return p
            A = np.concatenate([self.forward.jacobian(p), p[..., None, :]], axis=-2)
            b = np.concatenate([-r, np.zeros(r.shape[:-1] + (1,))], axis=-1)
            AtA = np.swapaxes(A, -1, -2) @ A
            step = np.linalg.solve(AtA, np.einsum("...ji,...j->...i", A, b)[..., None])[..., 0]
            p = p + step
            p = p / np.linalg.norm(p, axis=-1, keepdims=True)
        raise ConvergenceError(
            f"inverse of {self.forward!r} did not converge: residual {residual:.2e}", achieved=residual
        )

    def value(self, x: npt.ArrayLike) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return self.solve(x / np.linalg.norm(x, axis=-1, keepdims=True))

    def _frames(self, x: np.ndarray) -> tuple[np.ndarray, ...]:
        r = np.linalg.norm(x, axis=-1)
        y = x / r[..., None]
        p = self.solve(y)
        By = tangent_basis(y)
        Bp = tangent_basis(p)
        Jf = self.forward.jacobian(p)
        M3 = np.swapaxes(By, -1, -2) @ Jf @ Bp
        if np.any(np.abs(np.linalg.det(M3)) < 1e-12):
            raise SingularityError(f"{self.forward!r} has a singular differential on S³")
        M3inv = np.linalg.inv(M3)
        A = Bp @ M3inv @ np.swapaxes(By, -1, -2)
        return r, y, p, By, Bp, Jf, M3inv, A

    def jacobian(self, x: npt.ArrayLike) -> np.ndarray:
        r, _, _, _, _, _, _, A = self._frames(np.asarray(x, dtype=float))
        return A / r[..., None, None]

    def hessian(self, x: npt.ArrayLike) -> np.ndarray:
        r, y, p, By, Bp, Jf, M3inv, A = self._frames(np.asarray(x, dtype=float))
        Hf = self.forward.hessian(p)
        Hb = np.einsum("...ilm,...la,...mb->...iab", Hf, Bp, Bp)
        Jp = np.einsum("...il,...l->...i", Jf, p)
        eye3 = np.eye(3)
        # second derivatives of η along the images of the tangent basis vectors
        K = -np.einsum("...i,ab->...iab", p, eye3) - np.einsum(
            "...il,...lab->...iab", A, Hb - np.einsum("...l,ab->...lab", Jp, eye3)
        )
        tangential = np.einsum("...ag,...iab,...bd->...igd", M3inv, K, M3inv)
        AB = A @ By
        H_hat = np.zeros(y.shape[:-1] + (4, 4, 4))
        H_hat[..., :, :3, :3] = tangential
        H_hat[..., :, :3, 3] = -AB
        H_hat[..., :, 3, :3] = -AB
        frame = np.concatenate([By, y[..., None]], axis=-1)
        H = np.einsum("...ja,...iab,...kb->...ijk", frame, H_hat, frame)
        return H / (r * r)[..., None, None, None]

    def inverse(self) -> SphereMap:
        return self.forward

    def verify(self, n: int = 12) -> None:
        """
        Invert the map on an n×n×n grid of Hopf coordinates.

        Raises:
            InverseUnavailableError:
                If any grid point fails to invert.
        """
        eta = np.linspace(0.05, np.pi / 2 - 0.05, n)
        a = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
        E, A1, A2 = np.meshgrid(eta, a, a, indexing="ij")
        grid = np.stack(
            [np.cos(E) * np.cos(A1), np.cos(E) * np.sin(A1), np.sin(E) * np.cos(A2), np.sin(E) * np.sin(A2)],
            axis=-1,
        ).reshape(-1, 4)
        try:
            self._frames(grid)
        except (ConvergenceError, SingularityError, np.linalg.LinAlgError) as exc:
            raise InverseUnavailableError(f"{self.forward!r} is not invertible on the test grid: {exc}") from exc
        logger.debug("numerical inverse of %r verified on %d points", self.forward, len(grid))

    def __repr__(self) -> str:
        return f"NumericalInverse({self.forward!r})"


def tangent_basis(y: np.ndarray) -> np.ndarray:
    """
    Orthonormal bases (..., 4, 3) of the tangent spaces of S³ at unit vectors y.
    """
    stacked = np.concatenate([y[..., None], np.broadcast_to(np.eye(4), y.shape[:-1] + (4, 4))], axis=-1)
    Q, _ = np.linalg.qr(stacked)
    return Q[..., :, 1:]


def normalized_jet(
    G: np.ndarray, JG: np.ndarray, HG: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Value, Jacobian and Hessian of G/|G| from those of G.
    """
    n = np.linalg.norm(G, axis=-1)
    xi = G / n[..., None]
    nj = np.einsum("...i,...ij->...j", xi, JG)
    J = (JG - np.einsum("...i,...j->...ij", xi, nj)) / n[..., None, None]
    njk = np.einsum("...ik,...ij->...jk", J, JG) + np.einsum("...i,...ijk->...jk", xi, HG)
    H = (
        HG
        - np.einsum("...ik,...j->...ijk", J, nj)
        - np.einsum("...i,...jk->...ijk", xi, njk)
    ) / n[..., None, None, None] - np.einsum("...ij,...k->...ijk", J, nj) / n[..., None, None, None]
    return xi, J, H
