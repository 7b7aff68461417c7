"""
Points and equators of the unit 3-sphere S³ ⊂ ℝ⁴.

All functions accept either the typed values `SpherePoint` / `Equator` or plain arrays whose last
axis has length 4, so they can be applied point-wise and over whole sample grids alike.
"""

from __future__ import annotations

import dataclasses

import numpy as np
import numpy.typing as npt

from toruslab.errors import DomainError, SingularityError


NORMALIZATION_TOLERANCE = 1e-6


def _normalized(values: npt.ArrayLike, what: str) -> np.ndarray:
    x = np.asarray(values, dtype=float).reshape(-1)
    if x.shape != (4,):
        raise DomainError(f"{what} needs 4 coordinates, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise DomainError(f"{what} has non-finite coordinates: {x}")
    norm = float(np.linalg.norm(x))
    if abs(norm - 1.0) > NORMALIZATION_TOLERANCE:
        raise DomainError(
            f"{what} has norm {norm:.12g}, off the unit sphere by more than {NORMALIZATION_TOLERANCE:g}"
        )
    x = x / norm
    x.flags.writeable = False
    return x


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True, eq=False)
class SpherePoint:
    """
    Unit vector of ℝ⁴, i.e. a point of S³.

    The constructor re-normalizes its input and rejects vectors whose norm deviates from 1 by
    more than 1e-6, which separates float drift from user error.

    | Field | Type         | Semantics                                            |
    |-------|--------------|------------------------------------------------------|
    | `x`   | `np.ndarray` | Read-only ambient coordinates, norm 1 within 1e-12.  |
    """

    x: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", _normalized(self.x, "SpherePoint"))

    @classmethod
    def from_array(cls, values: npt.ArrayLike) -> SpherePoint:
        return cls(x=np.asarray(values, dtype=float))

    @classmethod
    def from_direction(cls, values: npt.ArrayLike) -> SpherePoint:
        """
        Build a point from any nonzero 4-vector by normalizing it.

        Raises:
            SingularityError:
                If the vector is zero.
        """
        x = np.asarray(values, dtype=float).reshape(-1)
        norm = float(np.linalg.norm(x))
        if norm < 1e-300:
            raise SingularityError("cannot normalize the zero vector")
        return cls(x=x / norm)

    @classmethod
    def _from_unit(cls, x: np.ndarray) -> SpherePoint:
        """
        Wrap coordinates that are unit by construction, skipping re-normalization.
        """
        x.flags.writeable = False
        point = object.__new__(cls)
        object.__setattr__(point, "x", x)
        return point

    def __array__(self, dtype: npt.DTypeLike = None, copy: bool | None = None) -> np.ndarray:
        return np.asarray(self.x, dtype=dtype)

    def __neg__(self) -> SpherePoint:
        return antipodal(self)

    def isclose(self, other: SpherePoint | npt.ArrayLike, tol: float = 1e-12) -> bool:
        return bool(np.linalg.norm(self.x - as_array(other)) <= tol)

    def __repr__(self) -> str:
        return f"SpherePoint(x={np.array2string(self.x, precision=6)})"


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True, eq=False)
class Equator:
    """
    Totally geodesic 2-sphere S(v) = {p ∈ S³ : ⟨v, p⟩ = 0} with its pole v.

    `Equator(v)` and `Equator(-v)` describe the same point set with opposite half-sphere labels:
    H₊(v) is where the signed height is positive.

    | Field | Type         | Semantics                                 |
    |-------|--------------|-------------------------------------------|
    | `v`   | `np.ndarray` | Read-only unit pole, norm 1 within 1e-12. |
    """

    v: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "v", _normalized(self.v, "Equator pole"))

    @classmethod
    def from_pole(cls, values: npt.ArrayLike) -> Equator:
        """
        Build an equator from any nonzero 4-vector, normalizing it first.

        Raises:
            SingularityError:
                If the vector is zero.
        """
        return cls(v=SpherePoint.from_direction(values).x)

    @property
    def pole(self) -> SpherePoint:
        return SpherePoint(x=self.v)

    def flipped(self) -> Equator:
        return Equator(v=-self.v)

    def contains(self, p: SpherePoint | npt.ArrayLike, tol: float = 1e-9) -> bool:
        return bool(np.all(np.abs(signed_height(self, p)) <= tol))

    def half_sphere(self, p: SpherePoint | npt.ArrayLike, tol: float = 0.0) -> int:
        """
        Return +1 for H₊(v), -1 for H₋(v) and 0 on S(v) within `tol`.
        """
        h = float(signed_height(self, p))
        if abs(h) <= tol:
            return 0
        return 1 if h > 0 else -1

    def __repr__(self) -> str:
        return f"Equator(v={np.array2string(self.v, precision=6)})"


def as_array(p: SpherePoint | Equator | npt.ArrayLike) -> np.ndarray:
    """
    Return the ambient coordinates of a point, the pole of an equator, or the array itself.
    """
    if isinstance(p, SpherePoint):
        return p.x
    if isinstance(p, Equator):
        return p.v
    return np.asarray(p, dtype=float)


def signed_height(eq: Equator | npt.ArrayLike, p: SpherePoint | npt.ArrayLike) -> np.ndarray | float:
    """
    Signed height ⟨v, p⟩ of a point above the equator S(v).

    Parameters:
        eq:
            Equator or pole vector.
        p:
            Point or array of points with last axis 4.

    Returns:
        Value in [-1, 1]; positive in H₊(v), negative in H₋(v), zero on S(v).
    """
    h = np.asarray(as_array(p) @ as_array(eq))
    return float(h) if h.ndim == 0 else h


def intrinsic_distance(p: SpherePoint | npt.ArrayLike, q: SpherePoint | npt.ArrayLike) -> np.ndarray | float:
    """
    Great-circle distance arccos⟨p, q⟩ in [0, π].

    Evaluated as 2·atan2(‖p - q‖, ‖p + q‖), accurate near coincident and antipodal points.
    """
    a, b = as_array(p), as_array(q)
    d = 2.0 * np.arctan2(np.linalg.norm(a - b, axis=-1), np.linalg.norm(a + b, axis=-1))
    return float(d) if np.ndim(d) == 0 else d


def antipodal(p: SpherePoint) -> SpherePoint:
    """
    Antipodal map p ↦ -p.
    """
    return SpherePoint._from_unit(-p.x)


def cross4(a: npt.ArrayLike, b: npt.ArrayLike, c: npt.ArrayLike) -> np.ndarray:
    """
    Generalized cross product of three vectors of ℝ⁴.

    The result n satisfies ⟨n, w⟩ = det[a, b, c, w] (rows) for every w, hence is orthogonal to
    a, b and c. Broadcasts over leading axes.
    """
    a, b, c = np.broadcast_arrays(
        np.asarray(a, dtype=float), np.asarray(b, dtype=float), np.asarray(c, dtype=float)
    )
    rows = np.stack([a, b, c], axis=-2)
    n = np.empty(a.shape, dtype=float)
    for i in range(4):
        cols = [j for j in range(4) if j != i]
        minor = np.linalg.det(rows[..., cols])
        # cofactor of the last row, column i (zero-based): (-1)^(3 + i)
        n[..., i] = minor if (3 + i) % 2 == 0 else -minor
    return n
