from __future__ import annotations

import dataclasses
import logging

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from toruslab.errors import ConvergenceError, DomainError
from toruslab.surfaces import SurfaceMesh
from .operators import assemble_operators

RESIDUAL_TOLERANCE = 1e-8
MAX_ITERATIONS = 500
SHIFT = -1e-2
MULTIPLICITY_TOLERANCE = 1e-2
MULTIPLICITY_FLOOR = 1e-8

logger = logging.getLogger(__name__)


def multiplicity_groups(
    eigenvalues: np.ndarray | list[float], rel: float = MULTIPLICITY_TOLERANCE
) -> list[list[int]]:
    """
    Group ascending eigenvalues whose relative spread stays within `rel`.

    A value joins the current group while it lies within `rel·|λ_first|` of the group's first
    value, with an absolute floor of 1e-8 so that the zero eigenvalue forms its own group.

    Returns:
        Index lists, one per group, in ascending order.
    """
    groups: list[list[int]] = []
    first = 0.0
    for i, lam in enumerate(np.asarray(eigenvalues, dtype=float)):
        if groups and lam - first <= max(rel * abs(first), MULTIPLICITY_FLOOR):
            groups[-1].append(i)
        else:
            groups.append([i])
            first = lam
    return groups


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True, eq=False)
class SpectralResult:
    """
    Leading eigenpairs of the Laplace-Beltrami operator on a mesh.

    | Field            | Type              | Semantics                                                  |
    |------------------|-------------------|------------------------------------------------------------|
    | `eigenvalues`    | `np.ndarray`      | Ascending eigenvalues, the first one 0.                    |
    | `eigenfunctions` | `np.ndarray`      | Mass-orthonormal vertex values, shape (count, n_u·n_v).    |
    | `residuals`      | `np.ndarray`      | ‖(stiffness - λ·mass)·f‖ per pair.                         |
    | `resolution`     | `tuple[int, int]` | Mesh resolution (n_u, n_v).                                |
    """

    eigenvalues: np.ndarray
    eigenfunctions: np.ndarray
    residuals: np.ndarray
    resolution: tuple[int, int]

    @property
    def count(self) -> int:
        return len(self.eigenvalues)

    @property
    def lambda1(self) -> float:
        return float(self.eigenvalues[1])

    @property
    def multiplicity_groups(self) -> list[list[int]]:
        return multiplicity_groups(self.eigenvalues)

    def eigenfunction_grid(self, index: int) -> np.ndarray:
        return self.eigenfunctions[index].reshape(self.resolution)


def _residuals(
    stiffness: sp.spmatrix, mass: sp.spmatrix, values: np.ndarray, vectors: np.ndarray
) -> np.ndarray:
    r = stiffness @ vectors - (mass @ vectors) * values
    return np.linalg.norm(r, axis=0)


def _normalize_signs(vectors: np.ndarray) -> np.ndarray:
    pivot = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivot, np.arange(vectors.shape[1])])
    return vectors * np.where(signs == 0, 1.0, signs)


def first_eigenpairs(
    mesh: SurfaceMesh,
    count: int,
    operators: tuple[sp.spmatrix, sp.spmatrix] | None = None,
    seed: int = 0,
) -> SpectralResult:
    """
    Compute the `count` smallest eigenpairs of the generalized problem stiffness·f = λ·mass·f.

    ARPACK runs in shift-invert mode around a small negative shift, so the shifted operator is
    positive-definite and the constant mode is found with the rest. A Rayleigh-Ritz step on the
    returned subspace then makes the vectors mass-orthonormal to working precision. Signs are
    fixed so that each eigenfunction's largest-magnitude entry is positive.

    Parameters:
        mesh:
            Periodic mesh.
        count:
            Number of eigenpairs, at least 2 and below the vertex count.
        operators:
            Pre-assembled (stiffness, mass).
        seed:
            Seed of the ARPACK start vector.

    Returns:
        The eigenpairs in ascending order.

    Raises:
        DomainError:
            If `count` is out of range.
        ConvergenceError:
            If ARPACK stops early or a residual exceeds 1e-8·‖stiffness‖₁; `achieved` holds the
            largest relative residual reached.
    """
    if not 2 <= count < mesh.vertex_count:
        raise DomainError(
            f"eigenpair count must lie in [2, {mesh.vertex_count}), got {count}"
        )
    stiffness, mass = assemble_operators(mesh) if operators is None else operators
    scale = float(spla.norm(stiffness, ord=1))
    v0 = np.random.default_rng(seed).standard_normal(mesh.vertex_count)
    try:
        _, vectors = spla.eigsh(
            stiffness,
            k=count,
            M=mass,
            sigma=SHIFT,
            which="LM",
            v0=v0,
            maxiter=MAX_ITERATIONS * count,
        )
    except spla.ArpackNoConvergence as exc:
        achieved = None
        if exc.eigenvectors is not None and exc.eigenvectors.size:
            achieved = float(
                np.max(_residuals(stiffness, mass, exc.eigenvalues, exc.eigenvectors)) / scale
            )
        raise ConvergenceError(
            f"eigensolver did not converge for {count} pairs on a {mesh.n_u}×{mesh.n_v} mesh",
            achieved=achieved,
        ) from exc

    reduced_k = vectors.T @ (stiffness @ vectors)
    reduced_m = vectors.T @ (mass @ vectors)
    reduced_k = 0.5 * (reduced_k + reduced_k.T)
    reduced_m = 0.5 * (reduced_m + reduced_m.T)
    values, coefficients = scipy.linalg.eigh(reduced_k, reduced_m)
    vectors = _normalize_signs(vectors @ coefficients)

    residuals = _residuals(stiffness, mass, values, vectors)
    worst = float(np.max(residuals)) / scale
    if worst > RESIDUAL_TOLERANCE:
        raise ConvergenceError(
            f"eigenpair residual {worst:.3e} exceeds {RESIDUAL_TOLERANCE:g} relative",
            achieved=worst,
        )
    logger.debug("λ = %s on a %d×%d mesh", np.array2string(values, precision=6), mesh.n_u, mesh.n_v)
    return SpectralResult(
        eigenvalues=values,
        eigenfunctions=np.ascontiguousarray(vectors.T),
        residuals=residuals,
        resolution=mesh.resolution,
    )
