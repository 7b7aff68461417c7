"""
Search for an equator of intersection type 2 by turning a tangent equator about its point of
contact.
"""

from __future__ import annotations

import logging
import math


from toruslab import models
from toruslab.errors import AmbiguousCellError, EquatorNotFoundError, PreconditionError, TracingResolutionError
from toruslab.sphere import Equator
from toruslab.surfaces import TorusImmersion, normal, principal_directions
from .classification import check_negative_curvature, classify


logger = logging.getLogger(__name__)

INITIAL_ANGLE = math.pi / 64
MIN_ANGLE = 1e-6
MAX_STEPS = 60


def find_type2_equator(
    M: TorusImmersion, resolution: int = 64, at: tuple[float, float] = (0.0, 0.0)
) -> Equator:
    """
    Find an equator meeting M in two disjoint curves of the same nonzero class.

    Starting from the equator tangent to M at X(u, v), the pole is turned towards the first
    principal direction, v' = cos θ·N + sin θ·w, so X(u, v) stays on the equator while the
    tangency there is destroyed. A principal direction is never asymptotic when S < 0. Angles ±θ
    are tried with θ halving from π/64 until 1e-6, at most 60 classifications.

    Parameters:
        M:
            Immersion with negative Gauss-Kronecker curvature.
        resolution:
            Grid size for each classification.
        at:
            Parameters (u, v) of the base point.

    Returns:
        An equator classified as type 2.

    Raises:
        PreconditionError:
            If S ≥ 0 somewhere on the grid.
        EquatorNotFoundError:
            If the angle budget runs out; `best` holds the last candidate examined.
    """
    note = check_negative_curvature(M, resolution)
    if note is not None:
        raise PreconditionError(note)
    u, v = at
    N = normal(M, u, v)
    w, _ = principal_directions(M, u, v)

    tangent = Equator.from_pole(N)
    best = tangent
    steps = 0
    if _is_type2(M, tangent, resolution):
        return tangent
    steps += 1

    theta = INITIAL_ANGLE
    while theta >= MIN_ANGLE:
        for sign in (1.0, -1.0):
            if steps >= MAX_STEPS:
                raise EquatorNotFoundError(f"no type-2 equator within {MAX_STEPS} classifications", best=best)
            candidate = Equator.from_pole(math.cos(theta) * N + sign * math.sin(theta) * w)
            best = candidate
            steps += 1
            if _is_type2(M, candidate, resolution):
                logger.info("type-2 equator found at rotation angle %.3g after %d classifications", sign * theta, steps)
                return candidate
        theta *= 0.5
    raise EquatorNotFoundError(f"no type-2 equator for rotation angles down to {MIN_ANGLE:g}", best=best)


def _is_type2(M: TorusImmersion, eq: Equator, resolution: int) -> bool:
    try:
        report = classify(M, eq, resolution=resolution, check_curvature=False)
    except (AmbiguousCellError, TracingResolutionError) as exc:
        logger.debug("candidate %s skipped: %s", eq, exc)
        return False
    return report.type is models.IntersectionType.TYPE_2
