from __future__ import annotations

import numpy as np
import scipy.ndimage
import scipy.sparse
import scipy.sparse.csgraph

from toruslab.errors import TangentEquatorError
from toruslab.sphere import Equator
from toruslab.surfaces import TorusImmersion
from .heights import HeightField, height_grid
from .tangencies import TWO_PI, find_tangencies
from .tracing import saddle_is_positive


def count_sign_components(
    grid: np.ndarray, field: HeightField, offset: tuple[float, float] = (0.0, 0.0)
) -> int:
    """
    Number of connected regions of constant sign of a periodic height grid.

    Nodes with f ≥ 0 are positive. Neighbours along the grid axes connect, including across the
    periodic seams; in saddle cells the diagonal pair sharing the sign of the critical value
    connects as well, matching the tracer's choice of branches.
    """
    positive = np.asarray(grid) >= 0.0
    n_u, n_v = positive.shape
    labels_pos, count_pos = scipy.ndimage.label(positive)
    labels_neg, count_neg = scipy.ndimage.label(~positive)
    labels = np.where(positive, labels_pos, labels_neg + count_pos) - 1
    total = count_pos + count_neg

    pairs = [
        np.stack([labels[0, :], labels[-1, :]], axis=-1)[positive[0, :] == positive[-1, :]],
        np.stack([labels[:, 0], labels[:, -1]], axis=-1)[positive[:, 0] == positive[:, -1]],
    ]

    c0 = positive
    c1 = np.roll(positive, -1, axis=0)
    c2 = np.roll(np.roll(positive, -1, axis=0), -1, axis=1)
    c3 = np.roll(positive, -1, axis=1)
    saddles = np.argwhere((c0 == c2) & (c1 == c3) & (c0 != c1))
    h_u, h_v = TWO_PI / n_u, TWO_PI / n_v
    diagonal = []
    for i, j in saddles:
        uc = offset[0] + (i + 0.5) * h_u
        vc = offset[1] + (j + 0.5) * h_v
        ip, jp = (i + 1) % n_u, (j + 1) % n_v
        if saddle_is_positive(field, uc, vc, h_u, h_v) == positive[i, j]:
            diagonal.append((labels[i, j], labels[ip, jp]))
        else:
            diagonal.append((labels[ip, j], labels[i, jp]))
    if diagonal:
        pairs.append(np.array(diagonal, dtype=int))

    edges = np.concatenate(pairs) if pairs else np.empty((0, 2), dtype=int)
    graph = scipy.sparse.coo_matrix(
        (np.ones(len(edges)), (edges[:, 0], edges[:, 1])), shape=(total, total)
    )
    count, _ = scipy.sparse.csgraph.connected_components(graph, directed=False)
    return int(count)


def component_count(
    M: TorusImmersion, eq: Equator, n: int = 128, offset: tuple[float, float] = (0.0, 0.0)
) -> int:
    """
    Number of connected components of M \\ S(v), counted on a periodic sign grid.

    Parameters:
        M:
            Immersion.
        eq:
            Equator, not tangent to M.
        n:
            Grid size.
        offset:
            Grid offset.

    Returns:
        Total number of positive and negative components.

    Raises:
        TangentEquatorError:
            If the equator is tangent to M somewhere.
    """
    tangencies = find_tangencies(M, eq, n)
    if tangencies:
        t = tangencies[0]
        raise TangentEquatorError(
            f"{eq} is tangent to the surface at ({t.u:.6f}, {t.v:.6f}) and {len(tangencies) - 1} more point(s)"
        )
    return count_sign_components(height_grid(M, eq, n, offset), HeightField(M, eq), offset)
