"""
Stereographic projection S³ \\ {pole} → ℝ³ and its inverse as an ambient map with exact
derivatives.
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

from toruslab.errors import DomainError, SingularityError
from .points import SpherePoint, as_array


POLE_TOLERANCE = 1e-9


def stereographic_frame(pole: SpherePoint | npt.ArrayLike, up: npt.ArrayLike | None = None) -> np.ndarray:
    """
    Orthonormal frame of the hyperplane orthogonal to the pole.

    Without `up`, the frame is the image of the first three coordinate axes under the
    Householder reflection exchanging e₄ and the pole (the identity frame for pole e₄).
    With `up` orthogonal to the pole, the third axis is `up`, so S(up) projects into the plane
    z = 0.

    Parameters:
        pole:
            Projection pole.
        up:
            Optional unit vector orthogonal to the pole.

    Returns:
        4×3 matrix whose columns are the frame vectors.

    Raises:
        DomainError:
            If `up` is not orthogonal to the pole.
    """
    n = as_array(pole)
    if up is None:
        e4 = np.array([0.0, 0.0, 0.0, 1.0])
        w = e4 - n
        ww = float(w @ w)
        H = np.eye(4) if ww < 1e-30 else np.eye(4) - 2.0 * np.outer(w, w) / ww
        return H[:, :3]
    up = np.asarray(up, dtype=float)
    up = up / np.linalg.norm(up)
    if abs(float(up @ n)) > 1e-9:
        raise DomainError(f"frame axis must be orthogonal to the pole, got ⟨up, pole⟩ = {up @ n:.3e}")
    null = np.linalg.svd(np.vstack([n, up]))[2][2:]
    a, b = null[0], null[1]
    if np.linalg.det(np.vstack([a, b, up, n])) < 0:
        b = -b
    return np.column_stack([a, b, up])


def stereographic_project(
    pole: SpherePoint | npt.ArrayLike,
    p: SpherePoint | npt.ArrayLike,
    frame: np.ndarray | None = None,
) -> np.ndarray:
    """
    Stereographic projection from `pole` in the frame completing it.

    The image of p is Fᵀp / (1 - ⟨p, pole⟩). Great 2-spheres through the pole go to planes
    through the origin; the antipode of the pole goes to the origin.

    Parameters:
        pole:
            Projection pole.
        p:
            Point or array of points with last axis 4.
        frame:
            Optional 4×3 frame from `stereographic_frame`.

    Returns:
        Array of 3-vectors.

    Raises:
        SingularityError:
            If a point lies within 1e-9 of the pole.
    """
    n = as_array(pole)
    x = as_array(p)
    F = stereographic_frame(n) if frame is None else frame
    gap = np.linalg.norm(x - n, axis=-1)
    if np.any(gap < POLE_TOLERANCE):
        raise SingularityError(f"point within {POLE_TOLERANCE:g} of the projection pole {n}")
    return (x @ F) / (1.0 - x @ n)[..., None]


class InverseStereographic:
    """
    Inverse stereographic projection ℝ³ → S³ from the pole e₄, as an ambient map.

    With s = |y|² and D = 1 + s the map is (2y/D, (s - 1)/D). `jacobian` returns the 4×3
    matrix of first partials and `hessian` the 4×3×3 array of second partials.
    """

    def value(self, y: npt.ArrayLike) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        s = np.sum(y * y, axis=-1)[..., None]
        D = 1.0 + s
        return np.concatenate([2.0 * y / D, (s - 1.0) / D], axis=-1)

    def jacobian(self, y: npt.ArrayLike) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        s = np.sum(y * y, axis=-1)[..., None, None]
        D = 1.0 + s
        eye = np.eye(3)
        top = 2.0 * eye / D - 4.0 * y[..., :, None] * y[..., None, :] / D**2
        bottom = 4.0 * y[..., None, :] / D**2
        return np.concatenate([top, bottom], axis=-2)

    def hessian(self, y: npt.ArrayLike) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        s = np.sum(y * y, axis=-1)[..., None, None, None]
        D = 1.0 + s
        eye = np.eye(3)
        yi = y[..., :, None, None]
        yj = y[..., None, :, None]
        yk = y[..., None, None, :]
        top = (
            -4.0 * (eye[:, :, None] * yk + eye[:, None, :] * yj + eye[None, :, :] * yi) / D**2
            + 16.0 * yi * yj * yk / D**3
        )
        bottom = 4.0 * eye / D[..., 0] ** 2 - 16.0 * y[..., :, None] * y[..., None, :] / D[..., 0] ** 3
        return np.concatenate([top, bottom[..., None, :, :]], axis=-3)


def project_points(pole: SpherePoint | npt.ArrayLike, points: npt.ArrayLike, up: npt.ArrayLike | None = None) -> np.ndarray:
    """
    Project an array of points, building the frame once.
    """
    return stereographic_project(pole, points, frame=stereographic_frame(pole, up))
