"""
Finite-element discretization of the Dirichlet energy and the L² pairing on a periodic mesh.

Each grid cell carries bilinear shape functions in the parameter coordinates. The area density
ρ = sqrt(det g) and the conductivity tensor ρ·g⁻¹ are interpolated bilinearly from the vertices
and integrated with the tensor 2×2 Gauss rule. Since the rule is exact for the bilinear density,
the mass of the constant function equals the parallelogram-rule area of the mesh.
"""

from __future__ import annotations

import logging

import numpy as np
import scipy.sparse as sp

from toruslab.errors import DomainError, SingularityError
from toruslab.surfaces import SurfaceMesh

DEGENERATE_MASS = 1e-14

_GAUSS = np.array([0.5 - 0.5 / np.sqrt(3.0), 0.5 + 0.5 / np.sqrt(3.0)])
# corner order within a cell: (0,0), (1,0), (0,1), (1,1) in (s, t)
_CORNERS = np.array([[0, 0], [1, 0], [0, 1], [1, 1]])

logger = logging.getLogger(__name__)


def _shape(s: float, t: float) -> tuple[np.ndarray, np.ndarray]:
    """
    Bilinear shape values (4,) and their (s, t) gradients (4, 2) at a local point.
    """
    cs, ct = _CORNERS[:, 0], _CORNERS[:, 1]
    fs = np.where(cs == 1, s, 1.0 - s)
    ft = np.where(ct == 1, t, 1.0 - t)
    ds = np.where(cs == 1, 1.0, -1.0)
    dt = np.where(ct == 1, 1.0, -1.0)
    return fs * ft, np.stack([ds * ft, fs * dt], axis=-1)


def _conductivity(mesh: SurfaceMesh) -> tuple[np.ndarray, np.ndarray]:
    g = mesh.metric
    det = g[..., 0, 0] * g[..., 1, 1] - g[..., 0, 1] * g[..., 1, 0]
    bad = np.argwhere(~(det > 0.0))
    if len(bad):
        i, j = bad[0]
        raise SingularityError(
            f"metric not positive-definite at vertex ({i}, {j}), det g = {det[i, j]:.3e}"
        )
    rho = np.sqrt(det)
    return rho, rho[..., None, None] * np.linalg.inv(g)


def cell_vertices(n_u: int, n_v: int) -> np.ndarray:
    """
    Flat vertex indices of the four corners of every cell, shape (n_u·n_v, 4).
    """
    i, j = np.meshgrid(np.arange(n_u), np.arange(n_v), indexing="ij")
    corners = [((i + a) % n_u) * n_v + (j + b) % n_v for a, b in _CORNERS]
    return np.stack([c.ravel() for c in corners], axis=-1)


def assemble_operators(mesh: SurfaceMesh) -> tuple[sp.csr_matrix, sp.csr_matrix]:
    """
    Assemble the stiffness and mass matrices of the induced metric.

    The stiffness form is ∫ ⟨grad f, grad g⟩ dA, the mass form ∫ f g dA, both for the bilinear
    interpolants of vertex values. Cells are visited in row-major order, so the accumulation order
    and hence the matrices are reproducible bit for bit.

    Parameters:
        mesh:
            Periodic mesh with vertex metrics.

    Returns:
        The pair (stiffness, mass) as CSR matrices of size `mesh.vertex_count`.

    Raises:
        SingularityError:
            If some vertex metric is not positive-definite; the message names the vertex.
    """
    n_u, n_v = mesh.resolution
    h_u, h_v = mesh.spacing
    rho, cond = _conductivity(mesh)
    cells = cell_vertices(n_u, n_v)
    rho_c = rho.ravel()[cells]
    cond_c = cond.reshape(-1, 2, 2)[cells]
    scale = np.array([1.0 / h_u, 1.0 / h_v])

    k_local = np.zeros((len(cells), 4, 4))
    m_local = np.zeros((len(cells), 4, 4))
    for s in _GAUSS:
        for t in _GAUSS:
            phi, dphi = _shape(s, t)
            grad = dphi * scale
            w = 0.25 * h_u * h_v
            rho_q = rho_c @ phi
            cond_q = np.einsum("a,caij->cij", phi, cond_c)
            k_local += w * np.einsum("ai,cij,bj->cab", grad, cond_q, grad)
            m_local += w * rho_q[:, None, None] * np.outer(phi, phi)

    rows = np.repeat(cells, 4, axis=1).ravel()
    cols = np.tile(cells, (1, 4)).ravel()
    shape = (mesh.vertex_count, mesh.vertex_count)
    stiffness = sp.coo_matrix((k_local.ravel(), (rows, cols)), shape=shape).tocsr()
    mass = sp.coo_matrix((m_local.ravel(), (rows, cols)), shape=shape).tocsr()
    logger.debug("Assembled operators on a %d×%d mesh, nnz = %d", n_u, n_v, stiffness.nnz)
    return stiffness, mass


def _as_vertex_values(mesh: SurfaceMesh, f: np.ndarray) -> np.ndarray:
    values = np.asarray(f, dtype=float).reshape(-1)
    if values.shape != (mesh.vertex_count,):
        raise DomainError(
            f"expected {mesh.vertex_count} vertex values for a {mesh.n_u}×{mesh.n_v} mesh, "
            f"got shape {np.shape(f)}"
        )
    return values


def project_mean_zero(f: np.ndarray, mass: sp.spmatrix) -> np.ndarray:
    """
    Remove the mass-weighted mean, so that 1ᵀ·mass·f = 0.
    """
    ones = np.ones(len(f))
    m1 = mass @ ones
    return f - (m1 @ f) / (m1 @ ones)


def rayleigh_quotient(
    mesh: SurfaceMesh,
    f: np.ndarray,
    operators: tuple[sp.spmatrix, sp.spmatrix] | None = None,
) -> float:
    """
    Dirichlet energy over squared mass norm of the mean-zero part of `f`.

    Parameters:
        mesh:
            Mesh carrying the vertex values.
        f:
            Vertex values, shape (n_u, n_v) or (n_u·n_v,).
        operators:
            Pre-assembled (stiffness, mass); assembled from `mesh` when omitted.

    Raises:
        DomainError:
            If `f` has the wrong size or its mean-zero part has mass norm below 1e-14.
    """
    stiffness, mass = assemble_operators(mesh) if operators is None else operators
    x = project_mean_zero(_as_vertex_values(mesh, f), mass)
    denominator = float(x @ (mass @ x))
    if denominator < DEGENERATE_MASS:
        raise DomainError(f"degenerate function: mass norm² {denominator:.3e} after projection")
    return float(x @ (stiffness @ x)) / denominator
