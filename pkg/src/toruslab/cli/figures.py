"""
Figure export: stereographic pictures of a torus and its intersection with an equator.

The projection pole lies on the equator S(v) and the frame's third axis is v, so S(v) projects
onto the plane z = 0 and the intersection curves become plane curves. PLY files store points in a
y-up frame, where that plane is y = 0.
"""

from __future__ import annotations

import dataclasses
import io
import logging

import matplotlib

matplotlib.use("Agg")
from matplotlib.figure import Figure
import numpy as np
from scipy.spatial import cKDTree

from toruslab.errors import DomainError, SingularityError
from toruslab.intersection import IntersectionReport
from toruslab.sphere import Equator, project_points
from toruslab.surfaces import SurfaceMesh

POLE_CLEARANCE = 1e-3
POLE_CANDIDATES = 256
_Y_UP = np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, -1.0, 0.0]])
_CURVE_COLORS = ("tab:blue", "tab:red", "tab:green", "tab:purple")

logger = logging.getLogger(__name__)


@dataclasses.dataclass(kw_only=True, frozen=True, slots=True, eq=False)
class Projection:
    """
    A mesh and its intersection curves projected from a pole on the slicing equator.

    | Field        | Type                  | Semantics                                               |
    |--------------|-----------------------|---------------------------------------------------------|
    | `pole`       | `np.ndarray`          | Unit projection pole in S(v).                           |
    | `clearance`  | `float`               | Distance from the pole to the nearest mesh vertex.      |
    | `mesh`       | `np.ndarray`          | Projected vertices, shape (n_u, n_v, 3).                |
    | `curves`     | `list[np.ndarray]`    | Projected curve vertices, each of shape (k, 3).         |
    | `tangencies` | `np.ndarray`          | Projected tangency points, shape (t, 3).                |
    """

    pole: np.ndarray
    clearance: float
    mesh: np.ndarray
    curves: list[np.ndarray]
    tangencies: np.ndarray

    @property
    def planarity_residual(self) -> float:
        """
        Largest |z| over the projected curve vertices; zero up to rounding.
        """
        if not self.curves:
            return 0.0
        return float(max(np.max(np.abs(c[:, 2])) for c in self.curves))


def equator_basis(eq: Equator) -> np.ndarray:
    """
    Orthonormal basis of v⊥, shape (3, 4).
    """
    return np.linalg.svd(eq.v[None, :])[2][1:]


def _fibonacci_sphere(n: int) -> np.ndarray:
    k = np.arange(n) + 0.5
    z = 1.0 - 2.0 * k / n
    phi = np.pi * (1.0 + np.sqrt(5.0)) * k
    r = np.sqrt(1.0 - z * z)
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=-1)


def choose_pole(mesh: SurfaceMesh, eq: Equator, requested: np.ndarray | None = None) -> tuple[np.ndarray, float]:
    """
    Pick the projection pole on S(v) and its clearance from the mesh.

    A requested pole is projected onto S(v). Without one, the point of a Fibonacci grid on S(v)
    farthest from the mesh vertices is used.

    Raises:
        DomainError:
            If the requested pole has no component in v⊥.
        SingularityError:
            If the pole lies within 1e-3 of the mesh.
    """
    tree = cKDTree(mesh.coordinates)
    if requested is None:
        candidates = _fibonacci_sphere(POLE_CANDIDATES) @ equator_basis(eq)
        distances, _ = tree.query(candidates)
        best = int(np.argmax(distances))
        pole, clearance = candidates[best], float(distances[best])
    else:
        p = np.asarray(requested, dtype=float)
        p = p - (p @ eq.v) * eq.v
        norm = float(np.linalg.norm(p))
        if norm < 1e-12:
            raise DomainError(f"projection pole {tuple(requested)} has no component in S(v)")
        pole = p / norm
        clearance = float(tree.query(pole)[0])
    if clearance <= POLE_CLEARANCE:
        raise SingularityError(
            f"projection pole {np.array2string(pole, precision=6)} lies on the surface "
            f"(clearance {clearance:.3e})"
        )
    logger.debug("projection pole %s, clearance %.3e", pole, clearance)
    return pole, clearance


def project_scene(
    mesh: SurfaceMesh, report: IntersectionReport, requested: np.ndarray | None = None
) -> Projection:
    pole, clearance = choose_pole(mesh, report.equator, requested)
    up = report.equator.v
    tangencies = np.array([t.point.x for t in report.tangencies]).reshape(-1, 4)
    return Projection(
        pole=pole,
        clearance=clearance,
        mesh=project_points(pole, mesh.points, up=up),
        curves=[project_points(pole, c.points, up=up) for c in report.curves],
        tangencies=project_points(pole, tangencies, up=up),
    )


def _fmt(x: float) -> str:
    return repr(float(x))


def render_ply(projection: Projection, comment: str = "") -> str:
    """
    ASCII PLY of the projected mesh (quad faces) and curves (closed polylines as edges).

    Every vertex carries an integer property `curve`: -1 for mesh vertices, the curve index
    otherwise.
    """
    n_u, n_v = projection.mesh.shape[:2]
    mesh_vertices = projection.mesh.reshape(-1, 3) @ _Y_UP.T
    i, j = np.meshgrid(np.arange(n_u), np.arange(n_v), indexing="ij")
    faces = np.stack(
        [i * n_v + j, ((i + 1) % n_u) * n_v + j, ((i + 1) % n_u) * n_v + (j + 1) % n_v, i * n_v + (j + 1) % n_v],
        axis=-1,
    ).reshape(-1, 4)

    rows = [f"{_fmt(x)} {_fmt(y)} {_fmt(z)} -1" for x, y, z in mesh_vertices]
    edges: list[tuple[int, int]] = []
    offset = len(mesh_vertices)
    for index, curve in enumerate(projection.curves):
        points = curve @ _Y_UP.T
        rows.extend(f"{_fmt(x)} {_fmt(y)} {_fmt(z)} {index}" for x, y, z in points)
        k = len(points)
        edges.extend((offset + a, offset + (a + 1) % k) for a in range(k))
        offset += k

    header = ["ply", "format ascii 1.0"]
    if comment:
        header.append(f"comment {comment}")
    header += [
        f"element vertex {len(rows)}",
        "property double x",
        "property double y",
        "property double z",
        "property int curve",
        f"element face {len(faces)}",
        "property list uchar int vertex_indices",
        f"element edge {len(edges)}",
        "property int vertex1",
        "property int vertex2",
        "end_header",
    ]
    body = rows + [f"4 {a} {b} {c} {d}" for a, b, c, d in faces] + [f"{a} {b}" for a, b in edges]
    return "\n".join(header + body) + "\n"


def render_svg(projection: Projection, title: str = "") -> bytes:
    """
    SVG of the projected intersection curves in the plane of S(v), tangencies marked.

    Output is deterministic: no date in the metadata and a fixed hash salt for element ids.
    """
    fig = Figure(figsize=(6, 6))
    ax = fig.add_subplot()
    for index, curve in enumerate(projection.curves):
        closed = np.vstack([curve, curve[:1]])
        ax.plot(closed[:, 0], closed[:, 1], color=_CURVE_COLORS[index % len(_CURVE_COLORS)], linewidth=1.2)
    if len(projection.tangencies):
        ax.plot(projection.tangencies[:, 0], projection.tangencies[:, 1], "ko", markersize=4)
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_axis_off()
    if title:
        ax.set_title(title)
    buffer = io.BytesIO()
    with matplotlib.rc_context({"svg.hashsalt": "toruslab", "svg.fonttype": "path"}):
        fig.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()

