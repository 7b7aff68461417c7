from __future__ import annotations

import numpy as np
import numpy.typing as npt

from toruslab.errors import DomainError
from toruslab.sphere import Equator, as_array
from toruslab.surfaces import TorusImmersion, parameter_grid


def height_grid(
    M: TorusImmersion,
    eq: Equator,
    n: int,
    offset: tuple[float, float] = (0.0, 0.0),
) -> np.ndarray:
    """
    Signed height f(u, v) = ⟨v, X(u, v)⟩ on a uniform periodic n×n grid.

    Parameters:
        M:
            Immersion.
        eq:
            Equator S(v).
        n:
            Grid size, at least 32.
        offset:
            Shift (δu, δv) of the grid origin; node (i, j) sits at (δu + 2πi/n, δv + 2πj/n).

    Returns:
        Array of shape (n, n), `indexing="ij"`.

    Raises:
        DomainError:
            If n < 32.
    """
    if n < 32:
        raise DomainError(f"height grid needs n ≥ 32, got {n}")
    U, V = parameter_grid(n)
    return M.eval(U + offset[0], V + offset[1]) @ as_array(eq)


class HeightField:
    """
    The height function f = ⟨v, X⟩ of an equator restricted to an immersion, with its partials
    on the parameter torus.
    """

    def __init__(self, M: TorusImmersion, eq: Equator) -> None:
        self.immersion = M
        self.equator = eq
        self._v = as_array(eq)

    def value(self, u: npt.ArrayLike, v: npt.ArrayLike) -> np.ndarray:
        return self.immersion.eval(u, v) @ self._v

    def derivatives(self, u: npt.ArrayLike, v: npt.ArrayLike) -> tuple[np.ndarray, ...]:
        """
        Return f, f_u, f_v, f_uu, f_uv, f_vv.
        """
        jet = self.immersion.jet(u, v)
        return tuple(w @ self._v for w in (jet.X, jet.X_u, jet.X_v, jet.X_uu, jet.X_uv, jet.X_vv))

    def gradient(self, u: npt.ArrayLike, v: npt.ArrayLike) -> np.ndarray:
        jet = self.immersion.jet(u, v)
        return np.stack([jet.X_u @ self._v, jet.X_v @ self._v], axis=-1)

    def hessian(self, u: float, v: float) -> np.ndarray:
        _, _, _, f_uu, f_uv, f_vv = self.derivatives(u, v)
        return np.array([[f_uu, f_uv], [f_uv, f_vv]], dtype=float)
