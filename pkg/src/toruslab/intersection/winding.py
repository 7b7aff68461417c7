from __future__ import annotations

import numpy as np

from toruslab.errors import TracingResolutionError
from .curves import IntersectionCurve
from .tangencies import TWO_PI, wrapped_difference


WINDING_RESIDUAL = 0.1


def winding_of_polyline(params: np.ndarray, closed: bool = True) -> tuple[int, int]:
    """
    Winding class of a closed polyline on the parameter torus.

    Sums the wrapped displacements between consecutive vertices (closing segment included) and
    divides by 2π.

    Raises:
        TracingResolutionError:
            If a component of the total lies 0.1 or farther from an integer.
    """
    params = np.asarray(params, dtype=float)
    if not closed:
        raise TracingResolutionError("winding class needs a closed curve")
    loop = np.vstack([params, params[:1]])
    total = np.sum(wrapped_difference(loop[1:], loop[:-1]), axis=0) / TWO_PI
    rounded = np.rint(total)
    residual = float(np.max(np.abs(total - rounded)))
    if residual >= WINDING_RESIDUAL:
        raise TracingResolutionError(
            f"winding ({total[0]:.3f}, {total[1]:.3f}) is {residual:.3f} away from an integer class"
        )
    return int(rounded[0]), int(rounded[1])


def winding_class(curve: IntersectionCurve) -> tuple[int, int]:
    """
    Homotopy class of a traced closed curve as a pair of integers.

    Parameters:
        curve:
            Closed traced curve.

    Returns:
        (w_u, w_v); (0, 0) iff the curve is nullhomotopic.

    Raises:
        TracingResolutionError:
            If the curve is open or its accumulated displacement is not close to an integer class.
    """
    return winding_of_polyline(curve.params, closed=curve.closed)


def same_class_up_to_orientation(a: tuple[int, int], b: tuple[int, int]) -> bool:
    return a == b or a == (-b[0], -b[1])
