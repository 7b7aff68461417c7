from __future__ import annotations

import dataclasses

import numpy as np

from toruslab.sphere import Equator
from toruslab.surfaces import TorusImmersion
from .tangencies import TangencyPoint


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True, eq=False)
class CurvatureProfile:
    """
    Geodesic curvature of a closed curve inside its equator 2-sphere, sampled at equal arclength.

    `values` is the resampled periodic profile used for congruence tests; `max_curvature` and
    `min_curvature` come from the unresampled continuation samples, so narrow peaks are not lost.

    | Field           | Type         | Semantics                                                 |
    |-----------------|--------------|-----------------------------------------------------------|
    | `values`        | `np.ndarray` | |κ_g| at `len(values)` equally spaced arclength stations. |
    | `length`        | `float`      | Total ambient length.                                     |
    | `max_curvature` | `float`      | Largest sampled |κ_g|.                                    |
    | `min_curvature` | `float`      | Smallest sampled |κ_g|.                                   |
    | `arclength`     | `np.ndarray` | Arclength of the raw samples.                             |
    | `raw`           | `np.ndarray` | |κ_g| at the raw samples.                                 |
    """

    values: np.ndarray
    length: float
    max_curvature: float
    min_curvature: float
    arclength: np.ndarray
    raw: np.ndarray

    @property
    def samples(self) -> int:
        return len(self.values)


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True, eq=False)
class IntersectionCurve:
    """
    Closed curve of S(v) ∩ M traced on the parameter torus.

    Consecutive vertices are joined by the shorter wrapped segment, and the last vertex joins the
    first. Curves through points of tangency contain the tangency parameters as vertices.

    | Field        | Type                         | Semantics                                            |
    |--------------|------------------------------|------------------------------------------------------|
    | `params`     | `np.ndarray`                 | Vertices (u, v) in [0, 2π)², shape (k, 2).           |
    | `points`     | `np.ndarray`                 | Ambient vertices X(u, v), shape (k, 4).              |
    | `winding`    | `tuple[int, int]`            | Winding class (w_u, w_v).                            |
    | `tangencies` | `tuple[TangencyPoint, ...]`  | Points of tangency on the curve.                     |
    | `immersion`  | `TorusImmersion \\| None`     | Traced immersion.                                    |
    | `equator`    | `Equator \\| None`            | Slicing equator.                                     |
    | `closed`     | `bool`                       | Whether the polyline closes up.                      |
    | `profile`    | `CurvatureProfile \\| None`   | Curvature signature, when computed.                  |
    """

    params: np.ndarray
    points: np.ndarray
    winding: tuple[int, int]
    tangencies: tuple[TangencyPoint, ...] = ()
    immersion: TorusImmersion | None = None
    equator: Equator | None = None
    closed: bool = True
    profile: CurvatureProfile | None = None

    @property
    def arclength(self) -> np.ndarray:
        """
        Cumulative chord length, starting at 0 and ending with the closing segment.
        """
        closed = np.vstack([self.points, self.points[:1]]) if self.closed else self.points
        steps = np.linalg.norm(np.diff(closed, axis=0), axis=-1)
        return np.concatenate([[0.0], np.cumsum(steps)])

    @property
    def length(self) -> float:
        return float(self.arclength[-1])

    @property
    def nullhomotopic(self) -> bool:
        return self.winding == (0, 0)

    def contains(self, tangency: TangencyPoint) -> bool:
        return any(t is tangency for t in self.tangencies)
