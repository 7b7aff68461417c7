"""
Curvature signatures of traced curves and congruence of curves inside equators.

A closed curve inside a totally geodesic 2-sphere is determined up to congruence by its length
and its geodesic curvature as a function of arclength, so comparing these two is a complete
congruence test. Profiles store |κ_g|, which makes mirror images congruent as well.
"""

from __future__ import annotations

import logging
import math

import numpy as np
import numpy.typing as npt
import scipy.optimize
import scipy.spatial

from toruslab.errors import ConvergenceError, DomainError, TracingResolutionError
from toruslab.sphere import Equator, as_array, cross4
from .curves import CurvatureProfile, IntersectionCurve
from .heights import HeightField
from .tangencies import TWO_PI, TangencyPoint, wrapped_difference


logger = logging.getLogger(__name__)

PROFILE_SAMPLES = 256
MIN_PROFILE_VERTICES = 64
MIN_STEP = 1e-7
MAX_STEP = 0.02
TANGENCY_CUTOFF = 1e-4
MAX_CONTINUATION_STEPS = 400_000
MAX_TURN = 0.35
MIN_HEADING_SEGMENT = 1e-9


class _Continuation:
    """
    Predictor-corrector continuation of the zero set of f on the parameter torus.

    The tangent field t = (-f_v, f_u) is followed with step clamp(0.1/κ_p, 1e-7, 0.02), κ_p
    being the curvature of the level set in parameter space; Newton's method along ∇f projects
    each predicted point back onto f = 0.
    """

    def __init__(self, field: HeightField) -> None:
        self.field = field
        self.pole = as_array(field.equator)

    def correct(self, p: np.ndarray) -> np.ndarray | None:
        q = p.copy()
        for _ in range(25):
            f, f_u, f_v = (float(w) for w in self.field.derivatives(q[0], q[1])[:3])
            if abs(f) < 1e-13:
                return q
            g2 = f_u * f_u + f_v * f_v
            if g2 < 1e-300:
                return None
            q = q - f * np.array([f_u, f_v]) / g2
        f = float(self.field.value(q[0], q[1]))
        return q if abs(f) < 1e-11 else None

    def sample(self, p: np.ndarray) -> tuple[np.ndarray, float, float, np.ndarray]:
        """
        Unit parameter tangent, parameter-space curvature, |κ_g| and the ambient point at p.
        """
        _, f_u, f_v, f_uu, f_uv, f_vv = (float(w) for w in self.field.derivatives(p[0], p[1]))
        t_u, t_v = -f_v, f_u
        dt_u = -(f_uv * t_u + f_vv * t_v)
        dt_v = f_uu * t_u + f_uv * t_v
        speed = math.hypot(t_u, t_v)
        kappa_p = abs(t_u * dt_v - t_v * dt_u) / speed**3
        jet = self.field.immersion.jet(p[0], p[1])
        c1 = jet.X_u * t_u + jet.X_v * t_v
        c2 = (
            jet.X_uu * t_u * t_u
            + 2.0 * jet.X_uv * t_u * t_v
            + jet.X_vv * t_v * t_v
            + jet.X_u * dt_u
            + jet.X_v * dt_v
        )
        n = cross4(self.pole, jet.X, c1)
        n = n / np.linalg.norm(n)
        kappa_g = abs(float(c2 @ n)) / float(c1 @ c1)
        return np.array([t_u, t_v]) / speed, kappa_p, kappa_g, jet.X

    def run(
        self,
        start: np.ndarray,
        heading: np.ndarray,
        target: np.ndarray | None = None,
        min_travel: float = 0.0,
        stop_radius: float = 0.0,
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        March from `start` along the branch whose tangent agrees with `heading`.

        With a `target` the march ends once the unwrapped position comes within one step (or
        `stop_radius`) of it. Without one the curve is closed: the march ends back at `start`
        modulo 2π, moving in the same direction as it left. Both stops wait until at least
        `min_travel` has been covered.

        The tangent keeps the orientation of t = (-f_v, f_u) throughout; a step that reverses it
        or turns it by more than `MAX_TURN` is retried with half the step. Off tangencies ∇f
        does not vanish on the curve, so this rejects jumps onto a neighbouring sheet of the
        zero set across a near-saddle.

        Returns:
            Unwrapped parameters (k, 2), |κ_g| (k,) and ambient points (k, 4).
        """
        p = self.correct(np.asarray(start, dtype=float))
        if p is None:
            raise ConvergenceError(f"cannot project {start} onto the zero set")
        tangent, kappa_p, kappa_g, x = self.sample(p)
        sign = 1.0 if float(tangent @ heading) >= 0.0 else -1.0
        origin, initial = p.copy(), tangent
        params, kappas, points = [p.copy()], [kappa_g], [x]
        travelled = 0.0
        for _ in range(MAX_CONTINUATION_STEPS):
            h = min(MAX_STEP, max(MIN_STEP, 0.1 / kappa_p if kappa_p > 0 else MAX_STEP))
            if travelled >= min_travel:
                if target is None:
                    gap = float(np.linalg.norm(wrapped_difference(origin, p)))
                    if float(tangent @ initial) > 0.0:
                        if gap <= h:
                            return np.array(params), np.array(kappas), np.array(points)
                        if gap < 2.0 * h:
                            h = max(0.6 * gap, MIN_STEP)
                else:
                    gap = float(np.linalg.norm(target - p))
                    if stop_radius > 0.0:
                        if gap <= stop_radius:
                            return np.array(params), np.array(kappas), np.array(points)
                        h = min(h, max(0.5 * gap, MIN_STEP))
                    elif gap <= h:
                        return np.array(params), np.array(kappas), np.array(points)
            while True:
                predicted = p + sign * h * tangent
                q = self.correct(predicted)
                if q is not None and np.linalg.norm(q - predicted) <= 0.5 * h:
                    sampled = self.sample(q)
                    if float(sampled[0] @ tangent) >= math.cos(MAX_TURN):
                        break
                h *= 0.5
                if h < MIN_STEP:
                    raise ConvergenceError(
                        f"continuation stalled at ({p[0]:.6f}, {p[1]:.6f}) with step below {MIN_STEP:g}"
                    )
            tangent, kappa_p, kappa_g, x = sampled
            travelled += float(np.linalg.norm(q - p))
            p = q
            params.append(p.copy())
            kappas.append(kappa_g)
            points.append(x)
        raise ConvergenceError(f"continuation did not close within {MAX_CONTINUATION_STEPS} steps")


def curvature_profile(curve: IntersectionCurve, samples: int = PROFILE_SAMPLES) -> CurvatureProfile:
    """
    Geodesic curvature of a traced curve inside its equator, as a function of arclength.

    The curve is followed by predictor-corrector continuation of the zero set, and |κ_g| is
    evaluated exactly from the second derivatives of the immersion. Curves through points of
    tangency are profiled arc by arc, each arc stopping 1e-4 short of the tangency.

    Parameters:
        curve:
            Closed traced curve with its immersion and equator attached.
        samples:
            Number of equal-arclength stations of the resampled profile.

    Returns:
        The curvature profile.

    Raises:
        DomainError:
            If the curve is open, too coarse or lacks its immersion or equator.
        TracingResolutionError:
            If the followed curve intersects itself.
        ConvergenceError:
            If the continuation stalls.
    """
    if curve.immersion is None or curve.equator is None:
        raise DomainError("curvature profile needs a curve traced from an immersion and an equator")
    if not curve.closed or len(curve.params) < MIN_PROFILE_VERTICES:
        raise DomainError(
            f"curvature profile needs a closed curve with at least {MIN_PROFILE_VERTICES} vertices, "
            f"got {len(curve.params)}"
        )
    walker = _Continuation(HeightField(curve.immersion, curve.equator))
    if curve.tangencies:
        arcs = _tangency_arcs(walker, curve)
    else:
        k, heading = _first_heading(curve.params)
        arcs = [walker.run(curve.params[k], heading, min_travel=4.0 * MAX_STEP)]

    params = np.concatenate([a[0] for a in arcs])
    kappa = np.concatenate([a[1] for a in arcs])
    points = np.concatenate([a[2] for a in arcs])
    steps = np.linalg.norm(np.roll(points, -1, axis=0) - points, axis=-1)
    arclength = np.concatenate([[0.0], np.cumsum(steps[:-1])])
    total = float(np.sum(steps))
    _check_embedded(params, [t.parameters for t in curve.tangencies])

    stations = total * np.arange(samples) / samples
    values = np.interp(stations, arclength, kappa, period=total)
    return CurvatureProfile(
        values=values,
        length=total,
        max_curvature=float(np.max(kappa)),
        min_curvature=float(np.min(kappa)),
        arclength=arclength,
        raw=kappa,
    )


def _first_heading(params: np.ndarray) -> tuple[int, np.ndarray]:
    """
    First vertex whose outgoing segment is longer than `MIN_HEADING_SEGMENT`, with that segment.
    """
    steps = wrapped_difference(np.roll(params, -1, axis=0), params)
    long_enough = np.flatnonzero(np.linalg.norm(steps, axis=-1) > MIN_HEADING_SEGMENT)
    if not len(long_enough):
        raise DomainError("traced curve has no segment to take a heading from")
    k = int(long_enough[0])
    return k, steps[k]


def _tangency_arcs(
    walker: _Continuation, curve: IntersectionCurve
) -> list[tuple[np.ndarray, np.ndarray, np.ndarray]]:
    positions = []
    for k, p in enumerate(curve.params):
        for t in curve.tangencies:
            if np.linalg.norm(wrapped_difference(p, t.parameters)) < 1e-12:
                positions.append((k, t))
    if not positions:
        raise DomainError("curve lists tangencies that are not among its vertices")
    arcs = []
    count = len(curve.params)
    for idx, (k, t) in enumerate(positions):
        k_next, _ = positions[(idx + 1) % len(positions)]
        heading = wrapped_difference(curve.params[(k + 1) % count], t.parameters)
        heading = heading / np.linalg.norm(heading)
        start = t.parameters + TANGENCY_CUTOFF * heading
        # unwrapped displacement from t to t_next along the polyline
        path = [curve.params[(k + s) % count] for s in range((k_next - k) % count or count)]
        path.append(curve.params[k_next % count])
        shift = np.sum(wrapped_difference(np.array(path[1:]), np.array(path[:-1])), axis=0)
        target = t.parameters + shift
        arcs.append(
            walker.run(start, heading, target, min_travel=10.0 * TANGENCY_CUTOFF, stop_radius=TANGENCY_CUTOFF)
        )
    return arcs


def _check_embedded(params: np.ndarray, tangencies: list[np.ndarray]) -> None:
    """
    Look for pairs of samples that are closer than half the local step but far apart along the
    curve. Neighbourhoods of tangencies, where arcs meet by construction, are skipped.
    """
    steps = np.linalg.norm(wrapped_difference(np.roll(params, -1, axis=0), params), axis=-1)
    along_curve = np.concatenate([[0.0], np.cumsum(steps[:-1])])
    total = float(np.sum(steps))
    local = np.maximum(steps, np.roll(steps, 1))
    keep = np.ones(len(params), dtype=bool)
    for t in tangencies:
        keep &= np.linalg.norm(wrapped_difference(params, t), axis=-1) > 10.0 * TANGENCY_CUTOFF
    wrapped = np.mod(params, TWO_PI)
    wrapped[wrapped >= TWO_PI] = 0.0
    tree = scipy.spatial.cKDTree(wrapped, boxsize=TWO_PI)
    pairs = tree.query_pairs(r=float(np.max(local)), output_type="ndarray")
    if not len(pairs):
        return
    i, j = pairs[:, 0], pairs[:, 1]
    reach = np.maximum(local[i], local[j])
    gap = np.linalg.norm(wrapped_difference(wrapped[i], wrapped[j]), axis=-1)
    along = np.abs(along_curve[i] - along_curve[j])
    along = np.minimum(along, total - along)
    bad = keep[i] & keep[j] & (gap < 0.5 * reach) & (along > 4.0 * reach)
    if np.any(bad):
        k = int(np.flatnonzero(bad)[0])
        raise TracingResolutionError(
            f"traced curve intersects itself near ({wrapped[i[k], 0]:.6f}, {wrapped[i[k], 1]:.6f})"
        )


def osculating_curvature(points: npt.ArrayLike, closed: bool = True) -> np.ndarray:
    """
    Three-point estimate of the geodesic curvature of a sampled curve on S³.

    Three points of S³ span a plane at distance d from the origin, which cuts a circle of radius
    ρ = √(1 - d²) out of S³; its geodesic curvature is d/ρ. d is measured directly, not as
    √(1 - ρ²). Collinear triples give 0.

    Returns:
        Estimates at the interior samples, or at every sample for closed curves.
    """
    x = np.asarray(points, dtype=float)
    if closed:
        a, b, c = np.roll(x, 1, axis=0), x, np.roll(x, -1, axis=0)
    else:
        a, b, c = x[:-2], x[1:-1], x[2:]
    la, lb, lc = (np.linalg.norm(w, axis=-1) for w in (b - a, c - b, a - c))
    u = b - a
    w = c - a
    with np.errstate(divide="ignore", invalid="ignore"):
        e1 = u / la[..., None]
        w_perp = w - np.sum(w * e1, axis=-1, keepdims=True) * e1
        height = np.linalg.norm(w_perp, axis=-1)
        e2 = w_perp / height[..., None]
        offset = a - np.sum(a * e1, axis=-1, keepdims=True) * e1 - np.sum(a * e2, axis=-1, keepdims=True) * e2
        area = 0.5 * la * height
        rho = la * lb * lc / (4.0 * area)
        kappa = np.linalg.norm(offset, axis=-1) / rho
    return np.where((la > 1e-300) & (area > 1e-300), kappa, 0.0)


def _fractional_shift(values: np.ndarray, shift: float) -> np.ndarray:
    n = len(values)
    k = np.fft.rfftfreq(n) * n
    return np.fft.irfft(np.fft.rfft(values) * np.exp(-2j * np.pi * k * shift / n), n)


def profile_distance(sig1: CurvatureProfile, sig2: CurvatureProfile) -> float:
    """
    Smallest sup-norm distance between two profiles over cyclic shifts and reversal.

    Integer shifts are scanned exhaustively, then the best one is refined to a fractional
    shift by band-limited interpolation.

    Raises:
        DomainError:
            If the profiles have different sample counts.
    """
    if sig1.samples != sig2.samples:
        raise DomainError(f"profiles sampled at {sig1.samples} and {sig2.samples} stations cannot be compared")
    a = sig1.values
    n = len(a)
    best = math.inf
    for b in (sig2.values, sig2.values[::-1]):
        shifted = np.stack([np.roll(b, s) for s in range(n)])
        errors = np.max(np.abs(shifted - a), axis=-1)
        s0 = int(np.argmin(errors))
        result = scipy.optimize.minimize_scalar(
            lambda s: float(np.max(np.abs(_fractional_shift(b, s) - a))),
            bounds=(s0 - 1.0, s0 + 1.0),
            method="bounded",
        )
        best = min(best, float(errors[s0]), float(result.fun))
    return best


def curves_congruent(sig1: CurvatureProfile, sig2: CurvatureProfile, tol: float = 1e-3) -> bool:
    """
    Whether two curves inside equators are congruent: equal length and matching curvature
    profiles up to a cyclic shift and/or reversal, both within `tol`.

    Raises:
        DomainError:
            If the profiles have different sample counts.
    """
    distance = profile_distance(sig1, sig2)
    if abs(sig1.length - sig2.length) > tol:
        return False
    return distance <= tol


def blowup_sequence(levels: range = range(10, 23)) -> list[tuple[float, Equator]]:
    """
    Equators v_t ∝ (1, 0, 1 + t, 0), t = 2^-k, approaching the equator tangent to the Clifford
    torus at the antipodal pair ±(√2/2)(1, 0, -1, 0).

    Their intersections with the Clifford torus are of type 2, with curvature blowing up near
    the limiting tangencies and tending to zero elsewhere.
    """
    return [(2.0**-k, Equator.from_pole([1.0, 0.0, 1.0 + 2.0**-k, 0.0])) for k in levels]


def tangency_distance(curve: IntersectionCurve, tangency: TangencyPoint) -> float:
    return float(np.min(np.linalg.norm(wrapped_difference(curve.params, tangency.parameters), axis=-1)))
