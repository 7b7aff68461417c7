"""
Fundamental forms and curvature functions of immersions into S³.

The second fundamental form is taken with respect to the Levi-Civita connection of S³: since the
unit normal N is orthogonal to X, the sphere component of ∂²X/∂a∂b along N coincides with the
ℝ⁴ component, so h_ab = -⟨X_ab, N⟩. Principal curvatures are ordered k1 ≥ k2.
"""

from __future__ import annotations

import dataclasses

import numpy as np
import numpy.typing as npt
import scipy.linalg

from toruslab.errors import SingularityError
from toruslab.sphere import cross4
from .base import SurfaceJet, TorusImmersion


METRIC_TOLERANCE = 1e-14


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True)
class FundamentalForms:
    """
    First and second fundamental forms with the unit normal, on a parameter array.

    | Field    | Type         | Semantics                                   |
    |----------|--------------|---------------------------------------------|
    | `E`      | `np.ndarray` | ⟨X_u, X_u⟩                                  |
    | `F`      | `np.ndarray` | ⟨X_u, X_v⟩                                  |
    | `G`      | `np.ndarray` | ⟨X_v, X_v⟩                                  |
    | `l`      | `np.ndarray` | -⟨X_uu, N⟩                                  |
    | `m`      | `np.ndarray` | -⟨X_uv, N⟩                                  |
    | `n`      | `np.ndarray` | -⟨X_vv, N⟩                                  |
    | `normal` | `np.ndarray` | Unit normal, trailing axis 4.               |
    """

    E: np.ndarray
    F: np.ndarray
    G: np.ndarray
    l: np.ndarray
    m: np.ndarray
    n: np.ndarray
    normal: np.ndarray

    @property
    def det(self) -> np.ndarray:
        return self.E * self.G - self.F * self.F


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True)
class CurvatureSample:
    """
    Curvature functions at one parameter point, or on a parameter array.

    Fields are floats for scalar input and arrays otherwise.

    | Field | Type                 | Semantics                                     |
    |-------|----------------------|-----------------------------------------------|
    | `k1`  | `float \\| np.ndarray` | Larger principal curvature.                 |
    | `k2`  | `float \\| np.ndarray` | Smaller principal curvature.                |
    | `H`   | `float \\| np.ndarray` | Mean curvature (k1 + k2) / 2.               |
    | `S`   | `float \\| np.ndarray` | Gauss-Kronecker curvature k1·k2.            |
    | `K`   | `float \\| np.ndarray` | Intrinsic curvature 1 + S.                  |
    """

    k1: float | np.ndarray
    k2: float | np.ndarray
    H: float | np.ndarray
    S: float | np.ndarray
    K: float | np.ndarray


def unit_normal(jet: SurfaceJet) -> np.ndarray:
    """
    Unit normal N = cross4(X, X_u, X_v) / |cross4(X, X_u, X_v)| of a jet.

    Raises:
        SingularityError:
            If X_u and X_v are linearly dependent somewhere.
    """
    c = cross4(jet.X, jet.X_u, jet.X_v)
    norm = np.linalg.norm(c, axis=-1, keepdims=True)
    if np.any(norm < np.sqrt(METRIC_TOLERANCE)):
        raise SingularityError(f"degenerate tangent plane, |X ∧ X_u ∧ X_v| = {float(np.min(norm)):.3e}")
    return c / norm


def fundamental_forms(jet: SurfaceJet) -> FundamentalForms:
    """
    First and second fundamental forms of a jet.

    Raises:
        SingularityError:
            If the metric degenerates somewhere.
    """

    def dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.sum(a * b, axis=-1)

    E, F, G = dot(jet.X_u, jet.X_u), dot(jet.X_u, jet.X_v), dot(jet.X_v, jet.X_v)
    det = E * G - F * F
    if np.any(det <= METRIC_TOLERANCE):
        raise SingularityError(f"degenerate metric, min EG - F² = {float(np.min(det)):.3e}")
    N = unit_normal(jet)
    return FundamentalForms(
        E=E, F=F, G=G, l=-dot(jet.X_uu, N), m=-dot(jet.X_uv, N), n=-dot(jet.X_vv, N), normal=N
    )


def _scalar_or_array(x: np.ndarray) -> float | np.ndarray:
    return float(x) if np.ndim(x) == 0 else x


def curvatures_from_forms(forms: FundamentalForms) -> CurvatureSample:
    det = forms.det
    H = (forms.E * forms.n - 2.0 * forms.F * forms.m + forms.G * forms.l) / (2.0 * det)
    S = (forms.l * forms.n - forms.m * forms.m) / det
    root = np.sqrt(np.maximum(H * H - S, 0.0))
    return CurvatureSample(
        k1=_scalar_or_array(H + root),
        k2=_scalar_or_array(H - root),
        H=_scalar_or_array(H),
        S=_scalar_or_array(S),
        K=_scalar_or_array(1.0 + S),
    )


def curvatures(M: TorusImmersion, u: npt.ArrayLike, v: npt.ArrayLike) -> CurvatureSample:
    """
    Principal, mean, Gauss-Kronecker and intrinsic curvature of an immersion.

    Parameters:
        M:
            Immersion with second partials.
        u:
            First parameter angle(s).
        v:
            Second parameter angle(s).

    Returns:
        Curvature sample; floats for scalar input, arrays for array input.

    Raises:
        SingularityError:
            If the metric degenerates at a requested point.
    """
    return curvatures_from_forms(fundamental_forms(M.jet(u, v)))


def normal(M: TorusImmersion, u: npt.ArrayLike, v: npt.ArrayLike) -> np.ndarray:
    return unit_normal(M.jet(u, v))


def principal_directions(M: TorusImmersion, u: float, v: float) -> tuple[np.ndarray, np.ndarray]:
    """
    Unit ambient principal directions at one point, ordered as (k1, k2).

    Solves the generalized symmetric eigenproblem II·d = k·I·d, whose eigenvectors are
    I-orthonormal, so the ambient vectors d_u X_u + d_v X_v come out unit and orthogonal.
    At umbilics any orthonormal pair is returned.
    """
    jet = M.jet(u, v)
    forms = fundamental_forms(jet)
    first = np.array([[forms.E, forms.F], [forms.F, forms.G]], dtype=float)
    second = np.array([[forms.l, forms.m], [forms.m, forms.n]], dtype=float)
    _, vectors = scipy.linalg.eigh(second, first)
    tangents = [vectors[0, i] * jet.X_u + vectors[1, i] * jet.X_v for i in (1, 0)]
    return tangents[0], tangents[1]


def parameter_grid(n_u: int, n_v: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """
    Uniform periodic parameter grid, `indexing="ij"`, without the duplicated endpoint.
    """
    n_v = n_u if n_v is None else n_v
    u = 2.0 * np.pi * np.arange(n_u) / n_u
    v = 2.0 * np.pi * np.arange(n_v) / n_v
    return np.meshgrid(u, v, indexing="ij")


def curvature_grid(M: TorusImmersion, n: int) -> CurvatureSample:
    U, V = parameter_grid(n)
    return curvatures(M, U, V)


def gauss_kronecker_grid(M: TorusImmersion, n: int) -> np.ndarray:
    """
    Gauss-Kronecker curvature S on the uniform n×n parameter grid.
    """
    return np.asarray(curvature_grid(M, n).S)


def check_immersion(M: TorusImmersion, n: int) -> float:
    """
    Minimum of EG - F² over the uniform n×n parameter grid.

    Values at or near zero mean the map fails to be an immersion somewhere.
    """
    U, V = parameter_grid(n)
    jet = M.jet(U, V)
    E = np.sum(jet.X_u * jet.X_u, axis=-1)
    F = np.sum(jet.X_u * jet.X_v, axis=-1)
    G = np.sum(jet.X_v * jet.X_v, axis=-1)
    return float(np.min(E * G - F * F))
