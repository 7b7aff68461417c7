"""
Arcs and closed curves inside an equator 2-sphere, and the product λ = μν joining two arcs.

Curves are sampled with unit tangents and signed geodesic curvature κ = ⟨c'', n⟩/|c'|² where
n = cross4(v, c, T) is the unit normal of the curve inside S(v).
"""

from __future__ import annotations

import dataclasses
import logging
from collections.abc import Callable

import numpy as np
import numpy.typing as npt
import scipy.integrate
import scipy.interpolate

from toruslab.errors import DomainError, NonRegularJoinError
from toruslab.intersection import CurvatureProfile, IntersectionCurve
from toruslab.sphere import Equator, GeodesicCircle, cross4, intrinsic_distance


logger = logging.getLogger(__name__)

EQUATOR_TOLERANCE = 1e-8
ENDPOINT_TOLERANCE = 1e-8
JOIN_TOLERANCE = 1e-6
ARC_SAMPLES = 512

CurveJet = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray, np.ndarray]]


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True, eq=False)
class SphereArc:
    """
    Sampled arc inside an equator.

    | Field       | Type         | Semantics                                               |
    |-------------|--------------|---------------------------------------------------------|
    | `points`    | `np.ndarray` | Samples on S(v), shape (k, 4).                          |
    | `tangents`  | `np.ndarray` | Unit tangents, shape (k, 4).                            |
    | `curvature` | `np.ndarray` | Signed geodesic curvature inside S(v), shape (k,).      |
    | `arclength` | `np.ndarray` | Arclength from the first sample, shape (k,).            |
    | `equator`   | `Equator`    | Containing equator; its pole orients the curvature.     |
    """

    points: np.ndarray
    tangents: np.ndarray
    curvature: np.ndarray
    arclength: np.ndarray
    equator: Equator

    @property
    def length(self) -> float:
        return float(self.arclength[-1])

    @property
    def start(self) -> np.ndarray:
        return self.points[0]

    @property
    def end(self) -> np.ndarray:
        return self.points[-1]

    def reoriented(self, equator: Equator) -> SphereArc:
        """
        The same arc with curvature signs taken with respect to `equator`, which must be S(v) or
        S(-v).
        """
        sign = float(np.sign(self.equator.v @ equator.v))
        return dataclasses.replace(self, curvature=sign * self.curvature, equator=equator)


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True, eq=False)
class ClosedCurve:
    """
    Closed arclength-sampled curve in an equator with the residuals of its joints.

    | Field                | Type         | Semantics                                         |
    |----------------------|--------------|---------------------------------------------------|
    | `points`             | `np.ndarray` | Samples, the first not repeated at the end.       |
    | `tangents`           | `np.ndarray` | Unit tangents.                                    |
    | `curvature`          | `np.ndarray` | Signed geodesic curvature.                        |
    | `arclength`          | `np.ndarray` | Arclength of each sample.                         |
    | `length`             | `float`      | Total length.                                     |
    | `equator`            | `Equator`    | Containing equator.                               |
    | `position_residual`  | `float`      | Largest endpoint gap at a joint.                  |
    | `tangent_residual`   | `float`      | Largest tangent jump at a joint.                  |
    | `curvature_residual` | `float`      | Largest curvature jump at a joint.                |
    """

    points: np.ndarray
    tangents: np.ndarray
    curvature: np.ndarray
    arclength: np.ndarray
    length: float
    equator: Equator
    position_residual: float
    tangent_residual: float
    curvature_residual: float

    def signature(self, samples: int = 256) -> CurvatureProfile:
        """
        |κ| resampled at `samples` equally spaced arclength stations, comparable with the
        profiles of traced curves.
        """
        stations = self.length * np.arange(samples) / samples
        kappa = np.abs(self.curvature)
        return CurvatureProfile(
            values=np.interp(stations, self.arclength, kappa, period=self.length),
            length=self.length,
            max_curvature=float(np.max(kappa)),
            min_curvature=float(np.min(kappa)),
            arclength=self.arclength,
            raw=kappa,
        )


def arc_from_derivatives(
    t: np.ndarray, x: np.ndarray, dx: np.ndarray, ddx: np.ndarray, equator: Equator
) -> SphereArc:
    """
    Arc from samples of a regular parametrized curve and its first two derivatives.

    Raises:
        DomainError:
            If the curve leaves the equator by more than 1e-8 or is not regular.
    """
    off = float(np.max(np.abs(x @ equator.v)))
    if off > EQUATOR_TOLERANCE:
        raise DomainError(f"curve leaves the equator {equator} by {off:.2e}")
    speed = np.linalg.norm(dx, axis=-1)
    if np.any(speed < 1e-14):
        raise DomainError("curve is not regular: vanishing velocity")
    T = dx / speed[:, None]
    normal = cross4(np.broadcast_to(equator.v, x.shape), x, T)
    kappa = np.sum(ddx * normal, axis=-1) / speed**2
    arclength = scipy.integrate.cumulative_trapezoid(speed, t, initial=0.0)
    return SphereArc(points=x, tangents=T, curvature=kappa, arclength=arclength, equator=equator)


def arc_from_parametric(
    curve: CurveJet, t0: float, t1: float, equator: Equator, samples: int = ARC_SAMPLES
) -> SphereArc:
    """
    Sample a curve given as t ↦ (c(t), c'(t), c''(t)) on [t0, t1].
    """
    t = np.linspace(t0, t1, samples)
    x, dx, ddx = curve(t)
    return arc_from_derivatives(t, x, dx, ddx, equator)


def arc_from_circle(
    circle: GeodesicCircle, t0: float, t1: float, samples: int = ARC_SAMPLES, equator: Equator | None = None
) -> SphereArc:
    """
    Arc of a circle between the angles t0 and t1, inside its containing equator by default.
    """
    return arc_from_parametric(
        lambda t: (circle.point(t), circle.velocity(t), circle.acceleration(t)),
        t0,
        t1,
        equator if equator is not None else circle.equator,
        samples,
    )


def _onto_sphere(
    v: np.ndarray, g: np.ndarray, dg: np.ndarray, ddg: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Project a curve of ℝ⁴ onto the hyperplane v⊥ and normalize it, with derivatives.
    """

    def flat(w: np.ndarray) -> np.ndarray:
        return w - (w @ v)[:, None] * v

    w, dw, ddw = flat(g), flat(dg), flat(ddg)
    n = np.linalg.norm(w, axis=-1)
    s = w / n[:, None]
    dn = np.sum(s * dw, axis=-1)
    ds = (dw - s * dn[:, None]) / n[:, None]
    ddn = np.sum(ds * dw, axis=-1) + np.sum(s * ddw, axis=-1)
    dds = (ddw - ds * dn[:, None] - s * ddn[:, None]) / n[:, None] - ds * (dn / n)[:, None]
    return s, ds, dds


def arc_from_points(points: npt.ArrayLike, equator: Equator, samples: int = ARC_SAMPLES) -> SphereArc:
    """
    Closed arc through sampled points of a closed curve, by a periodic quintic spline in the
    chord-length parameter, projected back onto S(v). The first and last samples coincide.
    """
    p = np.asarray(points, dtype=float)
    closed = np.vstack([p, p[:1]])
    chord = np.concatenate([[0.0], np.cumsum(np.linalg.norm(np.diff(closed, axis=0), axis=-1))])
    spline = scipy.interpolate.make_interp_spline(chord, closed, k=5, bc_type="periodic")
    s = np.linspace(0.0, chord[-1], samples)
    x, dx, ddx = _onto_sphere(equator.v, spline(s), spline(s, 1), spline(s, 2))
    return arc_from_derivatives(s, x, dx, ddx, equator)


def arc_from_curve(curve: IntersectionCurve, samples: int = ARC_SAMPLES) -> SphereArc:
    """
    Closed arc through the vertices of a traced intersection curve.
    """
    if curve.equator is None:
        raise DomainError("traced curve has no equator attached")
    return arc_from_points(curve.points, curve.equator, samples)


def spline_arc(
    after: SphereArc, before: SphereArc, samples: int = ARC_SAMPLES, length: float | None = None
) -> SphereArc:
    """
    Clamped quintic arc from the end of `after` to the start of `before`, matching position,
    tangent and curvature at both ends.

    The spline is fitted in ℝ⁴ to unit-speed data c, T and c'' = κ·n - c, then projected onto
    the equator; the projection preserves second-order contact at the ends.

    Parameters:
        after:
            Arc whose end starts the spline.
        before:
            Arc whose start ends the spline.
        samples:
            Number of samples.
        length:
            Parameter length; the intrinsic distance between the ends by default.
    """
    eq = after.equator
    before = before.reoriented(eq)
    v = eq.v

    def second(c: np.ndarray, T: np.ndarray, kappa: float) -> np.ndarray:
        return kappa * cross4(v, c, T) - c

    p0, T0, k0 = after.end, after.tangents[-1], float(after.curvature[-1])
    p1, T1, k1 = before.start, before.tangents[0], float(before.curvature[0])
    L = float(intrinsic_distance(p0, p1)) if length is None else float(length)
    if L <= 0.0:
        raise DomainError("spline arc needs distinct end points")
    spline = scipy.interpolate.make_interp_spline(
        [0.0, L],
        np.vstack([p0, p1]),
        k=5,
        bc_type=([(1, T0), (2, second(p0, T0, k0))], [(1, T1), (2, second(p1, T1, k1))]),
    )
    s = np.linspace(0.0, L, samples)
    x, dx, ddx = _onto_sphere(v, spline(s), spline(s, 1), spline(s, 2))
    return arc_from_derivatives(s, x, dx, ddx, eq)


def truncate_curve(arc: SphereArc, t: float) -> SphereArc:
    """
    Central part of a closed arc keeping the fraction 1 - t of its length.

    Raises:
        DomainError:
            If t is not in (0, 1).
    """
    if not 0.0 < t < 1.0:
        raise DomainError(f"truncation fraction must lie in (0, 1), got {t!r}")
    cut = 0.5 * t * arc.length
    keep = (arc.arclength >= cut) & (arc.arclength <= arc.length - cut)
    if np.count_nonzero(keep) < 3:
        raise DomainError(f"truncation by {t!r} leaves fewer than three samples")
    return SphereArc(
        points=arc.points[keep],
        tangents=arc.tangents[keep],
        curvature=arc.curvature[keep],
        arclength=arc.arclength[keep] - arc.arclength[keep][0],
        equator=arc.equator,
    )


def _join_residuals(a: SphereArc, b: SphereArc) -> tuple[float, float, float]:
    return (
        float(np.linalg.norm(a.end - b.start)),
        float(np.linalg.norm(a.tangents[-1] - b.tangents[0])),
        abs(float(a.curvature[-1] - b.curvature[0])),
    )


def close_arc(arc: SphereArc, tol: float = JOIN_TOLERANCE) -> ClosedCurve:
    """
    Closed curve from an arc whose end returns to its start.

    Raises:
        DomainError:
            If the ends are more than 1e-8 apart.
        NonRegularJoinError:
            If tangent or curvature jump at the seam by more than `tol`.
    """
    gap, dT, dk = _join_residuals(arc, arc)
    _check_join(gap, dT, dk, tol)
    return ClosedCurve(
        points=arc.points[:-1],
        tangents=arc.tangents[:-1],
        curvature=arc.curvature[:-1],
        arclength=arc.arclength[:-1],
        length=arc.length,
        equator=arc.equator,
        position_residual=gap,
        tangent_residual=dT,
        curvature_residual=dk,
    )


def _check_join(gap: float, dT: float, dk: float, tol: float) -> None:
    if gap > ENDPOINT_TOLERANCE:
        raise DomainError(f"arcs do not share their end points: gap {gap:.2e}")
    if dT > tol or dk > tol:
        raise NonRegularJoinError(f"arcs do not join regularly: tangent jump {dT:.2e}, curvature jump {dk:.2e}")


def curve_product(mu: SphereArc, nu: SphereArc, tol: float = JOIN_TOLERANCE) -> ClosedCurve:
    """
    The closed curve λ = μν obtained by following μ and then ν.

    Parameters:
        mu:
            First arc.
        nu:
            Second arc, starting where μ ends and ending where μ starts, in the same equator.
        tol:
            Largest tangent and curvature jump accepted at the joints.

    Returns:
        The closed curve with its joint residuals.

    Raises:
        DomainError:
            If the arcs lie in different equators or their end points are more than 1e-8 apart.
        NonRegularJoinError:
            If a tangent or curvature jump exceeds `tol`.
    """
    if abs(abs(float(mu.equator.v @ nu.equator.v)) - 1.0) > 1e-12:
        raise DomainError("arcs lie in different equators")
    nu = nu.reoriented(mu.equator)
    first = _join_residuals(mu, nu)
    second = _join_residuals(nu, mu)
    residuals = tuple(max(a, b) for a, b in zip(first, second))
    _check_join(*residuals, tol)
    logger.debug("curve product joined with residuals %s", residuals)
    return ClosedCurve(
        points=np.vstack([mu.points, nu.points[1:-1]]),
        tangents=np.vstack([mu.tangents, nu.tangents[1:-1]]),
        curvature=np.concatenate([mu.curvature, nu.curvature[1:-1]]),
        arclength=np.concatenate([mu.arclength, mu.length + nu.arclength[1:-1]]),
        length=mu.length + nu.length,
        equator=mu.equator,
        position_residual=residuals[0],
        tangent_residual=residuals[1],
        curvature_residual=residuals[2],
    )
