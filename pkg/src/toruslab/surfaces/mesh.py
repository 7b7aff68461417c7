from __future__ import annotations

import dataclasses

import numpy as np

from toruslab.errors import DomainError, SingularityError
from .base import TorusImmersion
from .curvature import METRIC_TOLERANCE, parameter_grid


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True, eq=False)
class SurfaceMesh:
    """
    Immersion sampled on a uniform periodic parameter grid.

    Vertex (i, j) sits at (u, v) = (2πi/n_u, 2πj/n_v); its right and upper neighbours wrap
    around. Area weights follow the parallelogram rule |X_u ∧ X_v|·h_u·h_v, so they sum to the
    periodic trapezoidal estimate of the area.

    | Field          | Type              | Semantics                                              |
    |----------------|-------------------|--------------------------------------------------------|
    | `immersion`    | `TorusImmersion`  | Sampled immersion.                                     |
    | `n_u`          | `int`             | Vertices along u.                                      |
    | `n_v`          | `int`             | Vertices along v.                                      |
    | `points`       | `np.ndarray`      | Ambient coordinates, shape (n_u, n_v, 4).              |
    | `metric`       | `np.ndarray`      | First fundamental form, shape (n_u, n_v, 2, 2).        |
    | `area_weights` | `np.ndarray`      | Vertex area weights, shape (n_u, n_v).                 |
    """

    immersion: TorusImmersion
    n_u: int
    n_v: int
    points: np.ndarray
    metric: np.ndarray
    area_weights: np.ndarray

    @property
    def resolution(self) -> tuple[int, int]:
        return self.n_u, self.n_v

    @property
    def vertex_count(self) -> int:
        return self.n_u * self.n_v

    @property
    def spacing(self) -> tuple[float, float]:
        return 2.0 * np.pi / self.n_u, 2.0 * np.pi / self.n_v

    @property
    def total_area(self) -> float:
        return float(np.sum(self.area_weights))

    @property
    def area_density(self) -> np.ndarray:
        """
        sqrt(det g) at every vertex.
        """
        return np.sqrt(np.linalg.det(self.metric))

    @property
    def coordinates(self) -> np.ndarray:
        """
        Ambient coordinates flattened to shape (n_u·n_v, 4), row-major in (i, j).
        """
        return self.points.reshape(-1, 4)

    def parameters(self) -> tuple[np.ndarray, np.ndarray]:
        return parameter_grid(self.n_u, self.n_v)


def sample_mesh(M: TorusImmersion, n_u: int, n_v: int | None = None) -> SurfaceMesh:
    """
    Sample an immersion on a uniform periodic grid with its induced metric.

    Parameters:
        M:
            Immersion to sample.
        n_u:
            Vertices along u, at least 8.
        n_v:
            Vertices along v, at least 8; defaults to `n_u`.

    Returns:
        The mesh.

    Raises:
        DomainError:
            If a resolution is below 8.
        SingularityError:
            If the metric fails to be positive-definite at some vertex.
    """
    n_v = n_u if n_v is None else n_v
    if n_u < 8 or n_v < 8:
        raise DomainError(f"mesh resolution must be at least 8×8, got {n_u}×{n_v}")
    U, V = parameter_grid(n_u, n_v)
    jet = M.jet(U, V)
    E = np.sum(jet.X_u * jet.X_u, axis=-1)
    F = np.sum(jet.X_u * jet.X_v, axis=-1)
    G = np.sum(jet.X_v * jet.X_v, axis=-1)
    det = E * G - F * F
    bad = np.argwhere(det <= METRIC_TOLERANCE)
    if len(bad):
        i, j = bad[0]
        raise SingularityError(
            f"metric not positive-definite at vertex ({i}, {j}), EG - F² = {det[i, j]:.3e}"
        )
    metric = np.stack([np.stack([E, F], axis=-1), np.stack([F, G], axis=-1)], axis=-2)
    h_u, h_v = 2.0 * np.pi / n_u, 2.0 * np.pi / n_v
    return SurfaceMesh(
        immersion=M,
        n_u=n_u,
        n_v=n_v,
        points=jet.X,
        metric=metric,
        area_weights=np.sqrt(det) * h_u * h_v,
    )
