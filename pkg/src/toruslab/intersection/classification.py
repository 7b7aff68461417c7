"""
Classification of equator-torus intersections into types 1 to 4.

For immersions with negative Gauss-Kronecker curvature the intersection S(v) ∩ M is one
nullhomotopic curve (type 1), two disjoint curves in the same nonzero class (type 2), two curves
sharing one point of tangency (type 3), or two curves sharing two points of tangency (type 4).
Anything else is reported as unclassified.
"""

from __future__ import annotations

import dataclasses
import logging

import numpy as np
import scipy.spatial

from toruslab import models
from toruslab.errors import AmbiguousCellError, PreconditionError
from toruslab.sphere import Equator
from toruslab.surfaces import TorusImmersion, gauss_kronecker_grid
from .components import count_sign_components
from .curves import IntersectionCurve
from .heights import HeightField, height_grid
from .profiles import curvature_profile
from .tangencies import TWO_PI, TangencyPoint, search_tangencies
from .tracing import trace_zero_set
from .winding import same_class_up_to_orientation


logger = logging.getLogger(__name__)

RETRY_OFFSET = (0.381966, 0.236068)


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True, eq=False)
class IntersectionReport:
    """
    Traced intersection of an equator with an immersion and its type.

    | Field                | Type                          | Semantics                                                   |
    |----------------------|-------------------------------|-------------------------------------------------------------|
    | `equator`            | `Equator`                     | Slicing equator.                                            |
    | `curves`             | `tuple[IntersectionCurve, ...]` | Traced closed curves (lobes split at tangencies).         |
    | `tangencies`         | `tuple[TangencyPoint, ...]`   | Points of tangency.                                         |
    | `type`               | `models.IntersectionType`     | Assigned type.                                              |
    | `component_count`    | `int \\| None`                 | Components of M \\ S(v); None at tangent equators.           |
    | `resolution`         | `int`                         | Grid size of the successful trace.                          |
    | `offset`             | `tuple[float, float]`         | Grid offset of the successful trace.                        |
    | `dropped_candidates` | `int`                         | Tangency candidates whose Newton iteration diverged.        |
    | `precondition`       | `str \\| None`                 | Failed curvature hypothesis in lenient mode.                |
    """

    equator: Equator
    curves: tuple[IntersectionCurve, ...]
    tangencies: tuple[TangencyPoint, ...]
    type: models.IntersectionType
    component_count: int | None
    resolution: int
    offset: tuple[float, float] = (0.0, 0.0)
    dropped_candidates: int = 0
    precondition: str | None = None


def check_negative_curvature(M: TorusImmersion, n: int) -> str | None:
    """
    Return None if the Gauss-Kronecker curvature is negative on the n×n grid, else a message
    naming the largest value.
    """
    S = gauss_kronecker_grid(M, n)
    worst = float(np.max(S))
    if worst < 0.0:
        return None
    i, j = np.unravel_index(int(np.argmax(S)), S.shape)
    return (
        f"Gauss-Kronecker curvature reaches {worst:.4g} at grid node ({i}, {j}); "
        f"the intersection types are only defined for surfaces with S < 0 everywhere"
    )


def assign_type(
    curves: tuple[IntersectionCurve, ...] | list[IntersectionCurve],
    tangencies: tuple[TangencyPoint, ...] | list[TangencyPoint],
) -> models.IntersectionType:
    if not tangencies:
        if len(curves) == 1 and curves[0].winding == (0, 0):
            return models.IntersectionType.TYPE_1
        if (
            len(curves) == 2
            and curves[0].winding != (0, 0)
            and same_class_up_to_orientation(curves[0].winding, curves[1].winding)
        ):
            return models.IntersectionType.TYPE_2
        return models.IntersectionType.UNCLASSIFIED
    if len(curves) != 2 or not all(t.signature is models.HessianSignature.SADDLE for t in tangencies):
        return models.IntersectionType.UNCLASSIFIED
    if all(c.contains(t) for c in curves for t in tangencies):
        if len(tangencies) == 1:
            return models.IntersectionType.TYPE_3
        if len(tangencies) == 2:
            return models.IntersectionType.TYPE_4
    return models.IntersectionType.UNCLASSIFIED


def classify(
    M: TorusImmersion,
    eq: Equator,
    resolution: int = 128,
    strict: bool = True,
    profiles: bool = False,
    check_curvature: bool = True,
    attempts: int = 3,
) -> IntersectionReport:
    """
    Trace S(v) ∩ M, find its tangencies and assign the intersection type.

    An ambiguous grid is retried with doubled resolution and a grid offset of
    (0.381966, 0.236068) cells, up to `attempts` traces in total.

    Parameters:
        M:
            Immersion.
        eq:
            Equator.
        resolution:
            Initial grid size.
        strict:
            Raise if the curvature hypothesis fails; otherwise record it and report UNCLASSIFIED.
        profiles:
            Attach curvature profiles to the curves.
        check_curvature:
            Check S < 0 on the grid; callers that checked already may skip it.
        attempts:
            Number of traces before giving up.

    Returns:
        The intersection report.

    Raises:
        PreconditionError:
            If `strict` and S ≥ 0 somewhere on the grid.
        AmbiguousCellError:
            If every attempt met an ambiguous grid.
    """
    note = check_negative_curvature(M, resolution) if check_curvature else None
    if note is not None and strict:
        raise PreconditionError(note)

    search = search_tangencies(M, eq, resolution)
    known = list(search.tangencies)
    n = resolution
    offset = (0.0, 0.0)
    for attempt in range(attempts):
        try:
            grid = height_grid(M, eq, n, offset)
            curves = trace_zero_set(grid, M, eq, tangencies=known, offset=offset)
            break
        except AmbiguousCellError as exc:
            if attempt == attempts - 1:
                raise
            n *= 2
            h = TWO_PI / n
            offset = (RETRY_OFFSET[0] * h, RETRY_OFFSET[1] * h)
            logger.warning("retrying %s at resolution %d: %s", eq, n, exc)

    tangencies = list(known)
    for curve in curves:
        tangencies.extend(t for t in curve.tangencies if not any(t is s for s in tangencies))
    if profiles:
        curves = [dataclasses.replace(c, profile=curvature_profile(c)) for c in curves]

    kind = assign_type(curves, tangencies) if note is None else models.IntersectionType.UNCLASSIFIED
    count = None if tangencies else count_sign_components(grid, HeightField(M, eq), offset)
    return IntersectionReport(
        equator=eq,
        curves=tuple(curves),
        tangencies=tuple(tangencies),
        type=kind,
        component_count=count,
        resolution=n,
        offset=offset,
        dropped_candidates=search.dropped,
        precondition=note,
    )


def antipodal_residual(report: IntersectionReport) -> float:
    """
    Largest distance from the antipode of a traced vertex to the traced curve set.

    Distances are measured to the polyline segments, so the residual shrinks quadratically with
    the grid spacing when the curve set is antipodally invariant.
    """
    if not report.curves:
        return 0.0
    starts = np.concatenate([c.points for c in report.curves])
    ends = np.concatenate([np.roll(c.points, -1, axis=0) for c in report.curves])
    tree = scipy.spatial.cKDTree(0.5 * (starts + ends))
    queries = -starts
    k = min(4, len(starts))
    _, idx = tree.query(queries, k=k)
    idx = idx.reshape(len(queries), k)
    a, b = starts[idx], ends[idx]
    ab = b - a
    t = np.clip(
        np.sum((queries[:, None, :] - a) * ab, axis=-1) / np.maximum(np.sum(ab * ab, axis=-1), 1e-300),
        0.0,
        1.0,
    )
    nearest = a + t[..., None] * ab
    d = np.linalg.norm(nearest - queries[:, None, :], axis=-1)
    return float(np.max(np.min(d, axis=-1)))
