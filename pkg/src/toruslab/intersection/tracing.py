"""
Periodic marching squares for the zero set of the height function.

Grid nodes with f ≥ 0 count as positive. Every edge with a sign change carries one vertex,
refined onto f = 0 to |f| < 1e-10. Cells with four sign changes are resolved by the sign of f at
the critical point inside the cell (or at the cell center when Newton's method leaves the cell).
Around each point of tangency a 3×3 block of cells is cut out; the four branch ends on the block
boundary are joined through the tangency, opposite ends paired, so each branch of the "x" stays
smooth. A loop passing twice through one tangency is split there into two lobes.
"""

from __future__ import annotations

import logging
import math

import numpy as np
import scipy.optimize

from toruslab.errors import AmbiguousCellError
from toruslab.sphere import Equator
from toruslab.surfaces import TorusImmersion
from .curves import IntersectionCurve
from .heights import HeightField
from .tangencies import (
    TWO_PI,
    TangencyPoint,
    find_tangencies,
    is_tangency,
    make_tangency,
    merge_tangencies,
    refine_critical_point,
    wrapped_difference,
)
from .winding import winding_of_polyline


logger = logging.getLogger(__name__)

TRACE_TOLERANCE = 1e-10
AMBIGUOUS_HEIGHT = 1e-12
AMBIGUOUS_GRADIENT = 1e-6
DUPLICATE_VERTEX = 1e-12


def trace_zero_set(
    grid: np.ndarray,
    M: TorusImmersion,
    eq: Equator,
    tangencies: list[TangencyPoint] | None = None,
    offset: tuple[float, float] = (0.0, 0.0),
) -> list[IntersectionCurve]:
    """
    Link the sign changes of a height grid into closed curves on the parameter torus.

    Parameters:
        grid:
            Height grid from `height_grid`.
        M:
            Immersion the grid was sampled from.
        eq:
            Equator the grid was sampled for.
        tangencies:
            Known points of tangency; searched on a grid of the same size when omitted. Saddle
            cells hiding further tangencies add to the list.
        offset:
            Grid offset used by `height_grid`.

    Returns:
        Closed curves, each with vertices refined onto the zero set.

    Raises:
        AmbiguousCellError:
            If the zero set passes within 1e-12 of a critical grid node, or the branches around
            a tangency cannot be resolved at this resolution.
        TracingResolutionError:
            If a traced curve has no integer winding class.
    """
    tracer = _Tracer(np.asarray(grid, dtype=float), HeightField(M, eq), offset)
    known = list(find_tangencies(M, eq, n=max(grid.shape)) if tangencies is None else tangencies)
    return tracer.trace(known)


class _Tracer:
    def __init__(self, grid: np.ndarray, field: HeightField, offset: tuple[float, float]) -> None:
        self.grid = grid
        self.field = field
        self.n_u, self.n_v = grid.shape
        self.h_u = TWO_PI / self.n_u
        self.h_v = TWO_PI / self.n_v
        self.off_u, self.off_v = offset
        self.positive = grid >= 0.0
        self.node_params: list[tuple[float, float]] = []
        self.node_edge: list[tuple[str, int, int]] = []
        self.adjacency: list[list[int]] = []
        self.through: dict[int, dict[int, int]] = {}

    def u_at(self, i: float | np.ndarray) -> np.ndarray:
        return self.off_u + self.h_u * np.asarray(i)

    def v_at(self, j: float | np.ndarray) -> np.ndarray:
        return self.off_v + self.h_v * np.asarray(j)

    def trace(self, tangencies: list[TangencyPoint]) -> list[IntersectionCurve]:
        self._check_nodes()
        h_cross = self.positive != np.roll(self.positive, -1, axis=0)
        v_cross = self.positive != np.roll(self.positive, -1, axis=1)
        cell_edges = np.stack(
            [h_cross, np.roll(v_cross, -1, axis=0), np.roll(h_cross, -1, axis=1), v_cross], axis=-1
        )
        counts = np.sum(cell_edges, axis=-1)
        saddle_cells = [tuple(c) for c in np.argwhere(counts == 4)]
        centers, tangencies = self._resolve_saddles(saddle_cells, tangencies)
        blocks = self._blocks(tangencies)

        h_id = self._edge_nodes("h", h_cross)
        v_id = self._edge_nodes("v", v_cross)
        self.adjacency = [[] for _ in self.node_params]

        for i, j in np.argwhere(counts > 0):
            i, j = int(i), int(j)
            if (i, j) in blocks:
                continue
            ids = [
                h_id[i, j],
                v_id[(i + 1) % self.n_u, j],
                h_id[i, (j + 1) % self.n_v],
                v_id[i, j],
            ]
            if counts[i, j] == 2:
                a, b = (k for k in ids if k >= 0)
                self._link(a, b)
                continue
            # isolate the two corners whose sign differs from the critical value
            if self.positive[i, j] != centers[(i, j)]:
                self._link(ids[3], ids[0])
                self._link(ids[1], ids[2])
            else:
                self._link(ids[0], ids[1])
                self._link(ids[2], ids[3])

        self._attach_tangencies(tangencies, blocks)
        return self._loops(tangencies)

    def _check_nodes(self) -> None:
        suspects = np.argwhere(np.abs(self.grid) < AMBIGUOUS_HEIGHT)
        if not len(suspects):
            return
        u = self.u_at(suspects[:, 0])
        v = self.v_at(suspects[:, 1])
        grad = np.linalg.norm(self.field.gradient(u, v), axis=-1)
        bad = np.flatnonzero(grad < AMBIGUOUS_GRADIENT)
        if len(bad):
            k = bad[0]
            raise AmbiguousCellError(
                f"zero set passes through the critical grid node ({u[k] % TWO_PI:.6f}, {v[k] % TWO_PI:.6f}) "
                f"with |∇f| = {grad[k]:.2e}"
            )

    def _resolve_saddles(
        self, cells: list[tuple[int, int]], tangencies: list[TangencyPoint]
    ) -> tuple[dict[tuple[int, int], bool], list[TangencyPoint]]:
        centers: dict[tuple[int, int], bool] = {}
        found = list(tangencies)
        for i, j in cells:
            uc = float(self.u_at(i + 0.5))
            vc = float(self.v_at(j + 0.5))
            crit = cell_critical_point(self.field, uc, vc, self.h_u, self.h_v)
            if crit is not None and is_tangency(self.field, *crit):
                logger.debug("saddle cell (%d, %d) holds a tangency at (%.6f, %.6f)", i, j, *crit)
                found.append(make_tangency(self.field, *crit))
            point = crit if crit is not None else (uc, vc)
            centers[(i, j)] = bool(self.field.value(*point) >= 0.0)
        return centers, merge_tangencies(found)

    def _cell_of(self, u: float, v: float) -> tuple[int, int]:
        i = int(((u - self.off_u) % TWO_PI) // self.h_u) % self.n_u
        j = int(((v - self.off_v) % TWO_PI) // self.h_v) % self.n_v
        return i, j

    def _blocks(self, tangencies: list[TangencyPoint]) -> dict[tuple[int, int], int]:
        blocks: dict[tuple[int, int], int] = {}
        for t, point in enumerate(tangencies):
            ci, cj = self._cell_of(point.u, point.v)
            for di in (-1, 0, 1):
                for dj in (-1, 0, 1):
                    cell = ((ci + di) % self.n_u, (cj + dj) % self.n_v)
                    if cell in blocks:
                        raise AmbiguousCellError(
                            f"tangencies {blocks[cell]} and {t} are closer than the grid resolves"
                        )
                    blocks[cell] = t
        return blocks

    def _edge_nodes(self, kind: str, crossing: np.ndarray) -> np.ndarray:
        ids = np.full(crossing.shape, -1, dtype=int)
        idx = np.argwhere(crossing)
        if not len(idx):
            return ids
        i, j = idx[:, 0], idx[:, 1]
        u0, v0 = self.u_at(i), self.v_at(j)
        if kind == "h":
            f1 = self.grid[(i + 1) % self.n_u, j]
            du, dv = self.h_u, 0.0
        else:
            f1 = self.grid[i, (j + 1) % self.n_v]
            du, dv = 0.0, self.h_v
        t = self._edge_roots(u0, v0, du, dv, self.grid[i, j], f1)
        for k in range(len(idx)):
            ids[i[k], j[k]] = len(self.node_params)
            self.node_params.append((float((u0[k] + t[k] * du) % TWO_PI), float((v0[k] + t[k] * dv) % TWO_PI)))
            self.node_edge.append((kind, int(i[k]), int(j[k])))
        return ids

    def _edge_roots(
        self, u0: np.ndarray, v0: np.ndarray, du: float, dv: float, f0: np.ndarray, f1: np.ndarray
    ) -> np.ndarray:
        """
        Illinois iteration on all edges at once, with `brentq` for stragglers.
        """
        a = np.zeros_like(f0)
        b = np.ones_like(f0)
        fa = f0.copy()
        fb = f1.copy()
        for _ in range(60):
            active = (np.abs(fb) >= 1e-14) & (np.abs(b - a) > 1e-15)
            if not np.any(active):
                break
            denom = np.where(active, fb - fa, 1.0)
            c = np.where(active, b - fb * (b - a) / denom, b)
            c = np.clip(c, 0.0, 1.0)
            fc = np.where(active, self.field.value(u0 + c * du, v0 + c * dv), fb)
            flip = active & (fc * fb < 0)
            stay = active & ~flip
            a = np.where(flip, b, a)
            fa = np.where(flip, fb, np.where(stay, 0.5 * fa, fa))
            b = np.where(active, c, b)
            fb = np.where(active, fc, fb)
        t = b
        for k in np.flatnonzero(np.abs(fb) >= TRACE_TOLERANCE):

            def along(s: float, k: int = int(k)) -> float:
                return float(self.field.value(u0[k] + s * du, v0[k] + s * dv))

            t[k] = scipy.optimize.brentq(along, 0.0, 1.0, xtol=1e-15)
        return t

    def _link(self, a: int, b: int) -> None:
        self.adjacency[a].append(b)
        self.adjacency[b].append(a)

    def _block_of_node(self, node: int, blocks: dict[tuple[int, int], int]) -> int | None:
        kind, i, j = self.node_edge[node]
        if kind == "h":
            cells = [(i, j), (i, (j - 1) % self.n_v)]
        else:
            cells = [(i, j), ((i - 1) % self.n_u, j)]
        for cell in cells:
            if cell in blocks:
                return blocks[cell]
        return None

    def _attach_tangencies(self, tangencies: list[TangencyPoint], blocks: dict[tuple[int, int], int]) -> None:
        ends: dict[int, list[int]] = {t: [] for t in range(len(tangencies))}
        for node, neighbours in enumerate(self.adjacency):
            if len(neighbours) == 1:
                t = self._block_of_node(node, blocks)
                if t is None:
                    raise AmbiguousCellError(f"open contour end at {self.node_params[node]}")
                ends[t].append(node)
        base = len(self.node_params)
        for t, point in enumerate(tangencies):
            node_t = base + t
            self.node_params.append((point.u, point.v))
            self.adjacency.append([])
            if not ends[t]:
                continue
            if len(ends[t]) != 4:
                raise AmbiguousCellError(
                    f"{len(ends[t])} branch ends around the tangency at ({point.u:.6f}, {point.v:.6f}), expected 4"
                )
            first, second = _pair_branches(point, [np.array(self.node_params[k]) for k in ends[t]])
            a, b = ends[t][first[0]], ends[t][first[1]]
            c, d = ends[t][second[0]], ends[t][second[1]]
            for k in (a, b, c, d):
                self._link(k, node_t)
            self.through[node_t] = {a: b, b: a, c: d, d: c}
        for node in range(base):
            degree = len(self.adjacency[node])
            if degree == 0 and self._block_of_node(node, blocks) is not None:
                continue
            if degree != 2:
                raise AmbiguousCellError(
                    f"contour vertex at {self.node_params[node]} has {len(self.adjacency[node])} neighbours"
                )

    def _loops(self, tangencies: list[TangencyPoint]) -> list[IntersectionCurve]:
        base = len(self.node_params) - len(tangencies)
        visited = np.zeros(base, dtype=bool)
        loops: list[list[int]] = []
        for start in range(base):
            if visited[start] or not self.adjacency[start]:
                continue
            visited[start] = True
            seq = [start]
            prev, cur = start, self.adjacency[start][0]
            while cur != start:
                seq.append(cur)
                if cur >= base:
                    nxt = self.through[cur][prev]
                else:
                    visited[cur] = True
                    left, right = self.adjacency[cur]
                    nxt = right if left == prev else left
                prev, cur = cur, nxt
                if len(seq) > len(self.node_params) + 2 * len(tangencies):
                    raise AmbiguousCellError("contour walk does not close")
            loops.extend(_split_lobes(seq, base))
        curves = []
        for seq in loops:
            seq = _drop_duplicates(seq, base, self.node_params)
            params = np.array([self.node_params[k] for k in seq])
            on_curve = tuple(tangencies[k - base] for k in dict.fromkeys(seq) if k >= base)
            curves.append(
                IntersectionCurve(
                    params=params,
                    points=self.field.immersion.eval(params[:, 0], params[:, 1]),
                    winding=winding_of_polyline(params),
                    tangencies=on_curve,
                    immersion=self.field.immersion,
                    equator=self.field.equator,
                )
            )
        return curves


def _pair_branches(point: TangencyPoint, ends: list[np.ndarray]) -> tuple[tuple[int, int], tuple[int, int]]:
    """
    Split four branch ends into two pairs of opposite ends.

    Ends are matched to the branch directions of the saddle when these are known; otherwise
    they are sorted by angle around the tangency and paired across.
    """
    directions = [wrapped_difference(e, point.parameters) for e in ends]
    directions = [d / np.linalg.norm(d) for d in directions]
    if point.branches is not None:
        groups: list[list[int]] = [[], []]
        for k, d in enumerate(directions):
            sines = [abs(d[0] * b[1] - d[1] * b[0]) for b in point.branches]
            groups[int(np.argmin(sines))].append(k)
        if all(len(g) == 2 for g in groups):
            return (groups[0][0], groups[0][1]), (groups[1][0], groups[1][1])
    order = sorted(range(4), key=lambda k: math.atan2(directions[k][1], directions[k][0]))
    return (order[0], order[2]), (order[1], order[3])


def _drop_duplicates(seq: list[int], base: int, node_params: list[tuple[float, float]]) -> list[int]:
    """
    Drop vertices closer than `DUPLICATE_VERTEX` to the previously kept one, the closing pair
    included. Refined edge vertices coincide when the zero set passes through a grid node.
    Tangency nodes are always kept.
    """
    at = np.asarray(node_params, dtype=float)
    kept: list[int] = []
    for node in seq:
        if kept and node < base:
            gap = np.linalg.norm(wrapped_difference(at[node], at[kept[-1]]))
            if gap < DUPLICATE_VERTEX:
                continue
        kept.append(node)
    while len(kept) > 1 and kept[-1] < base:
        if np.linalg.norm(wrapped_difference(at[kept[-1]], at[kept[0]])) >= DUPLICATE_VERTEX:
            break
        kept.pop()
    return kept


def _split_lobes(seq: list[int], base: int) -> list[list[int]]:
    seen: dict[int, int] = {}
    for pos, node in enumerate(seq):
        if node >= base:
            if node in seen:
                p = seen[node]
                first = seq[p:pos]
                second = seq[pos:] + seq[:p]
                return _split_lobes(first, base) + _split_lobes(second, base)
            seen[node] = pos
    return [seq]


def cell_critical_point(
    field: HeightField, uc: float, vc: float, h_u: float, h_v: float
) -> tuple[float, float] | None:
    """
    Critical point of f inside the cell centered at (uc, vc), if Newton's method finds one there.
    """
    crit = refine_critical_point(field, uc, vc)
    if crit is None:
        return None
    du, dv = wrapped_difference(np.array(crit), np.array([uc, vc]))
    if abs(du) > 0.75 * h_u or abs(dv) > 0.75 * h_v:
        return None
    return crit


def saddle_is_positive(field: HeightField, uc: float, vc: float, h_u: float, h_v: float) -> bool:
    """
    Sign of f at the critical point of a saddle cell, or at its center when there is none.
    """
    crit = cell_critical_point(field, uc, vc, h_u, h_v)
    point = crit if crit is not None else (uc, vc)
    return bool(field.value(*point) >= 0.0)
