"""
Critical points of the height function on the parameter torus and points of tangency between an
equator and an immersion.

A point of tangency is a critical point of f = ⟨v, X⟩ lying on the zero set. It is declared when
the Newton-refined critical point has |f| < 1e-8 and |∇f| < 1e-6. For surfaces with negative
Gauss-Kronecker curvature every tangency is a nondegenerate saddle and the zero set has the shape
of an "x" there.
"""

from __future__ import annotations

import dataclasses
import logging
import math

import numpy as np
import scipy.ndimage

from toruslab import models
from toruslab.sphere import Equator, SpherePoint
from toruslab.surfaces import TorusImmersion, normal, parameter_grid
from .heights import HeightField


logger = logging.getLogger(__name__)

TANGENCY_HEIGHT = 1e-8
TANGENCY_GRADIENT = 1e-6
MERGE_DISTANCE = 1e-6
TWO_PI = 2.0 * math.pi


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True, eq=False)
class TangencyPoint:
    """
    Point where an equator is tangent to the immersion.

    | Field               | Type                       | Semantics                                              |
    |---------------------|----------------------------|--------------------------------------------------------|
    | `u`                 | `float`                    | First parameter angle in [0, 2π).                      |
    | `v`                 | `float`                    | Second parameter angle in [0, 2π).                     |
    | `point`             | `SpherePoint`              | Ambient point X(u, v).                                 |
    | `signature`         | `models.HessianSignature`  | Signature of the Hessian of f.                         |
    | `eigenvalues`       | `tuple[float, float]`      | Hessian eigenvalues in parameter coordinates.          |
    | `height`            | `float`                    | Residual f(u, v).                                      |
    | `gradient_norm`     | `float`                    | Residual |∇f(u, v)|.                                   |
    | `branches`          | `np.ndarray \\| None`       | Unit parameter directions of the two zero-set branches, shape (2, 2); saddles only. |
    | `crossing_angle`    | `float \\| None`            | Ambient angle in [0, π/2] between the branches; saddles only. |
    """

    u: float
    v: float
    point: SpherePoint
    signature: models.HessianSignature
    eigenvalues: tuple[float, float]
    height: float
    gradient_norm: float
    branches: np.ndarray | None = None
    crossing_angle: float | None = None

    @property
    def parameters(self) -> np.ndarray:
        return np.array([self.u, self.v])


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True)
class CriticalPointSearch:
    """
    Outcome of a tangency search.

    | Field        | Type                         | Semantics                                        |
    |--------------|------------------------------|--------------------------------------------------|
    | `tangencies` | `tuple[TangencyPoint, ...]`  | Refined, merged points of tangency.              |
    | `seeds`      | `int`                        | Grid candidates handed to Newton.                |
    | `dropped`    | `int`                        | Candidates whose Newton iteration diverged.      |
    """

    tangencies: tuple[TangencyPoint, ...]
    seeds: int
    dropped: int


def wrapped_difference(a: np.ndarray | float, b: np.ndarray | float) -> np.ndarray:
    """
    Componentwise a - b reduced to [-π, π).
    """
    return (np.asarray(a) - np.asarray(b) + math.pi) % TWO_PI - math.pi


def refine_critical_point(
    field: HeightField, u: float, v: float, max_iter: int = 50
) -> tuple[float, float] | None:
    """
    Newton iteration for ∇f = 0 on the parameter torus.

    Returns:
        The refined parameters in [0, 2π)², or None if the iteration diverged, met a singular
        Hessian or wandered farther than 1 radian from its start.
    """
    x = np.array([u, v], dtype=float)
    start = x.copy()
    for _ in range(max_iter):
        _, f_u, f_v, f_uu, f_uv, f_vv = (float(w) for w in field.derivatives(x[0], x[1]))
        grad = np.array([f_u, f_v])
        if np.linalg.norm(grad) < 1e-14:
            break
        hess = np.array([[f_uu, f_uv], [f_uv, f_vv]])
        try:
            step = np.linalg.solve(hess, -grad)
        except np.linalg.LinAlgError:
            return None
        if not np.all(np.isfinite(step)):
            return None
        x = x + step
        if np.linalg.norm(x - start) > 1.0:
            return None
        if np.linalg.norm(step) < 1e-15:
            break
    grad = field.gradient(x[0], x[1])
    if not np.linalg.norm(grad) < TANGENCY_GRADIENT:
        return None
    return float(x[0] % TWO_PI), float(x[1] % TWO_PI)


def hessian_signature(eigenvalues: np.ndarray) -> models.HessianSignature:
    scale = max(1.0, float(np.max(np.abs(eigenvalues))))
    if np.min(np.abs(eigenvalues)) < 1e-8 * scale:
        return models.HessianSignature.DEGENERATE
    if eigenvalues[0] > 0 and eigenvalues[1] > 0:
        return models.HessianSignature.MINIMUM
    if eigenvalues[0] < 0 and eigenvalues[1] < 0:
        return models.HessianSignature.MAXIMUM
    return models.HessianSignature.SADDLE


def make_tangency(field: HeightField, u: float, v: float) -> TangencyPoint:
    """
    Describe the critical point at (u, v): signature, residuals and, for saddles, the two branch
    directions and their ambient crossing angle.
    """
    f = float(field.value(u, v))
    grad_norm = float(np.linalg.norm(field.gradient(u, v)))
    hess = field.hessian(u, v)
    eigenvalues, vectors = np.linalg.eigh(hess)
    signature = hessian_signature(eigenvalues)
    branches = None
    angle = None
    if signature is models.HessianSignature.SADDLE:
        # λ₂ < 0 < λ₁ after reordering; null directions √|λ₂|·e₁ ± √λ₁·e₂
        lam_neg, lam_pos = eigenvalues
        e_neg, e_pos = vectors[:, 0], vectors[:, 1]
        d1 = math.sqrt(-lam_neg) * e_pos + math.sqrt(lam_pos) * e_neg
        d2 = math.sqrt(-lam_neg) * e_pos - math.sqrt(lam_pos) * e_neg
        branches = np.vstack([d1 / np.linalg.norm(d1), d2 / np.linalg.norm(d2)])
        jet = field.immersion.jet(u, v)
        w1 = branches[0, 0] * jet.X_u + branches[0, 1] * jet.X_v
        w2 = branches[1, 0] * jet.X_u + branches[1, 1] * jet.X_v
        cosine = abs(float(w1 @ w2)) / float(np.linalg.norm(w1) * np.linalg.norm(w2))
        angle = math.acos(min(1.0, cosine))
    return TangencyPoint(
        u=u,
        v=v,
        point=SpherePoint.from_direction(field.immersion.eval(u, v)),
        signature=signature,
        eigenvalues=(float(eigenvalues[0]), float(eigenvalues[1])),
        height=f,
        gradient_norm=grad_norm,
        branches=branches,
        crossing_angle=angle,
    )


def is_tangency(field: HeightField, u: float, v: float) -> bool:
    return bool(
        abs(float(field.value(u, v))) < TANGENCY_HEIGHT
        and np.linalg.norm(field.gradient(u, v)) < TANGENCY_GRADIENT
    )


def merge_tangencies(points: list[TangencyPoint]) -> list[TangencyPoint]:
    """
    Drop points closer than 1e-6 in parameter space to an earlier one.
    """
    kept: list[TangencyPoint] = []
    for p in points:
        if all(np.linalg.norm(wrapped_difference(p.parameters, q.parameters)) >= MERGE_DISTANCE for q in kept):
            kept.append(p)
    return kept


def search_tangencies(M: TorusImmersion, eq: Equator, n: int = 128) -> CriticalPointSearch:
    """
    Seed Newton's method from grid minima of |∇f|² that are close enough to the zero set,
    then keep the refined critical points on the zero set.
    """
    field = HeightField(M, eq)
    U, V = parameter_grid(n)
    f, f_u, f_v, f_uu, f_uv, f_vv = field.derivatives(U, V)
    g = f_u * f_u + f_v * f_v
    h = TWO_PI / n
    curvature_bound = float(np.max(np.abs(np.stack([f_uu, f_uv, f_vv]))))
    local_min = g == scipy.ndimage.minimum_filter(g, size=3, mode="wrap")
    near_zero = np.abs(f) <= 2.0 * curvature_bound * h * h + 1e-12
    labels, count = scipy.ndimage.label(local_min & near_zero)
    seeds = [tuple(np.argwhere(labels == k)[0]) for k in range(1, count + 1)]
    found: list[TangencyPoint] = []
    dropped = 0
    for i, j in seeds:
        refined = refine_critical_point(field, float(U[i, j]), float(V[i, j]))
        if refined is None:
            dropped += 1
            continue
        if is_tangency(field, *refined):
            found.append(make_tangency(field, *refined))
    if dropped:
        logger.warning("tangency search dropped %d of %d Newton candidates for %s", dropped, len(seeds), eq)
    return CriticalPointSearch(tangencies=tuple(merge_tangencies(found)), seeds=len(seeds), dropped=dropped)


def find_tangencies(M: TorusImmersion, eq: Equator, n: int = 128) -> list[TangencyPoint]:
    """
    Points of tangency of an equator with an immersion.

    Parameters:
        M:
            Immersion.
        eq:
            Equator.
        n:
            Size of the seeding grid.

    Returns:
        Refined points with |f| < 1e-8 and |∇f| < 1e-6, merged within 1e-6 in parameter space.
    """
    return list(search_tangencies(M, eq, n).tangencies)


def tangent_equator(M: TorusImmersion, u: float, v: float) -> Equator:
    """
    The equator tangent to the immersion at X(u, v), i.e. with the unit normal as pole.
    """
    return Equator.from_pole(normal(M, u, v))
