"""Exact k-nearest-neighbor machinery: kth-neighbor distances and
within-radius counts, with a brute-force reference backend and a KD-tree
fast path that agree bit for bit.

Both backends compute point-to-point distances with the same sequential
per-coordinate reduction, so the floating-point results are identical.
Distance ties are broken by ascending point index in both backends, which
makes the equivalence exactly testable.
"""

import heapq
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DataError

__all__ = [
    "NormKind",
    "Backend",
    "NeighborResult",
    "KdTree",
    "kth_neighbor_distances",
    "count_within",
]

_LEAF_SIZE = 16


class NormKind(str, Enum):
    CHEBYSHEV = "chebyshev"  # max over coordinates of |a_i - b_i|
    EUCLIDEAN = "euclidean"  # sqrt of sum of squared differences


class Backend(str, Enum):
    NAIVE = "naive"
    KDTREE = "kdtree"


@dataclass(frozen=True)
class NeighborResult:
    """The k nearest other points of one query point.

    neighbor_indices are sorted by (distance, index) ascending; the query
    point itself is never listed. kth_distance is the distance to the last
    listed neighbor.
    """

    query_index: int
    kth_distance: float
    neighbor_indices: tuple[int, ...]


def _as_points(points) -> np.ndarray:
    pts = np.ascontiguousarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise DataError("points must form a nonempty T x d matrix")
    if not np.all(np.isfinite(pts)):
        raise DataError("points must be finite")
    return pts


def _core_to_all(pts: np.ndarray, qi: int, norm: NormKind) -> np.ndarray:
    """Distance cores from one point to all points.

    Core means the comparable quantity before the final norm step:
    the max |diff| for chebyshev, the sum of squares for euclidean.
    Coordinates are reduced sequentially (column by column) so the result
    matches a scalar loop over coordinates bit for bit.
    """
    q = pts[qi]
    d = pts.shape[1]
    if norm is NormKind.CHEBYSHEV:
        core = np.abs(pts[:, 0] - q[0])
        for j in range(1, d):
            np.maximum(core, np.abs(pts[:, j] - q[j]), out=core)
    else:
        t = pts[:, 0] - q[0]
        core = t * t
        for j in range(1, d):
            t = pts[:, j] - q[j]
            core += t * t
    return core


def _finalize(core: float, norm: NormKind) -> float:
    return math.sqrt(core) if norm is NormKind.EUCLIDEAN else core


class KdTree:
    """Static exact KD-tree: median split on the widest-spread dimension,
    tight bounding boxes, leaf size 16, no rebalancing.

    Queries return exact k-nearest neighbors with distance ties broken by
    ascending index. A subtree is pruned only when the smallest possible
    distance to its box strictly exceeds the current worst candidate; the
    box distance is computed with the same per-coordinate arithmetic as
    point distances, so (by monotonicity of IEEE operations) pruning never
    discards a point the brute-force reference would keep.
    """

    def __init__(self, points, norm: NormKind | str = NormKind.CHEBYSHEV, leaf_size: int = _LEAF_SIZE):
        self.points = _as_points(points)
        self.norm = NormKind(norm)
        self._leaf_size = max(1, int(leaf_size))
        self._rows: list[list[float]] = self.points.tolist()
        self._boxes: list[tuple[list[float], list[float]]] = []
        self._children: list[tuple[int, int] | None] = []
        self._leaves: list[list[int] | None] = []
        self._build(np.arange(self.points.shape[0]))

    def _build(self, idx: np.ndarray) -> int:
        sub = self.points[idx]
        lo = sub.min(axis=0)
        hi = sub.max(axis=0)
        node = len(self._boxes)
        self._boxes.append((lo.tolist(), hi.tolist()))
        self._children.append(None)
        self._leaves.append(None)
        if idx.size <= self._leaf_size:
            self._leaves[node] = idx.tolist()
            return node
        axis = int(np.argmax(hi - lo))
        mid = idx.size // 2
        order = np.argpartition(sub[:, axis], mid)
        left = self._build(idx[order[:mid]])
        right = self._build(idx[order[mid:]])
        self._children[node] = (left, right)
        return node

    def _box_core(self, node: int, q: list[float]) -> float:
        lo, hi = self._boxes[node]
        if self.norm is NormKind.CHEBYSHEV:
            worst = 0.0
            for j in range(len(q)):
                v = q[j]
                t = lo[j] - v
                if t <= 0.0:
                    t = v - hi[j]
                    if t <= 0.0:
                        continue
                if t > worst:
                    worst = t
            return worst
        acc = 0.0
        for j in range(len(q)):
            v = q[j]
            t = lo[j] - v
            if t <= 0.0:
                t = v - hi[j]
                if t <= 0.0:
                    continue
            acc += t * t
        return acc

    def query(self, query_index: int, k: int) -> list[tuple[float, int]]:
        """k nearest other points as (core, index), ascending (core, index)."""
        rows = self._rows
        q = rows[query_index]
        d = len(q)
        cheb = self.norm is NormKind.CHEBYSHEV
        heap: list[tuple[float, int]] = []  # (-core, -index); root is the worst kept
        stack = [(0, 0.0)]
        while stack:
            node, mind = stack.pop()
            if len(heap) == k and mind > -heap[0][0]:
                continue
            leaf = self._leaves[node]
            if leaf is None:
                left, right = self._children[node]
                dl = self._box_core(left, q)
                dr = self._box_core(right, q)
                # push the farther child first so the nearer one is explored first
                if dl <= dr:
                    stack.append((right, dr))
                    stack.append((left, dl))
                else:
                    stack.append((left, dl))
                    stack.append((right, dr))
                continue
            for i in leaf:
                if i == query_index:
                    continue
                p = rows[i]
                if cheb:
                    core = 0.0
                    for j in range(d):
                        t = p[j] - q[j]
                        if t < 0.0:
                            t = -t
                        if t > core:
                            core = t
                else:
                    core = 0.0
                    for j in range(d):
                        t = p[j] - q[j]
                        core += t * t
                if len(heap) < k:
                    heapq.heappush(heap, (-core, -i))
                else:
                    wc = -heap[0][0]
                    if core < wc or (core == wc and i < -heap[0][1]):
                        heapq.heapreplace(heap, (-core, -i))
        return sorted((-c, -i) for c, i in heap)


def _naive_query(pts: np.ndarray, qi: int, k: int, norm: NormKind) -> list[tuple[float, int]]:
    core = _core_to_all(pts, qi, norm)
    core[qi] = np.inf
    kth_val = np.partition(core, k - 1)[k - 1]
    cand = np.flatnonzero(core <= kth_val)
    # stable sort keeps ascending-index order inside distance ties
    order = np.argsort(core[cand], kind="stable")[:k]
    chosen = cand[order]
    return [(float(core[i]), int(i)) for i in chosen]


def kth_neighbor_distances(
    points,
    k: int,
    norm: NormKind | str = NormKind.CHEBYSHEV,
    backend: Backend | str = Backend.KDTREE,
) -> list[NeighborResult]:
    """Exact k nearest neighbors of every point, excluding the point itself.

    Duplicate points are legal here; a kth distance of zero is a valid
    output. Rejecting zero distances is the entropy estimator's job.
    """
    norm = NormKind(norm)
    backend = Backend(backend)
    pts = _as_points(points)
    T = pts.shape[0]
    if k < 1:
        raise DataError(f"k must be at least 1, got {k}")
    if k >= T:
        raise DataError(f"k={k} needs at least k+1 points, got {T}")

    if backend is Backend.KDTREE:
        tree = KdTree(pts, norm)
        per_query = [tree.query(i, k) for i in range(T)]
    else:
        per_query = [_naive_query(pts, i, k, norm) for i in range(T)]

    results = []
    for i, pairs in enumerate(per_query):
        results.append(
            NeighborResult(
                query_index=i,
                kth_distance=_finalize(pairs[-1][0], norm),
                neighbor_indices=tuple(idx for _, idx in pairs),
            )
        )
    return results


def count_within(points, center_index: int, radius: float, strict: bool = True) -> int:
    """Number of other points within radius of one point, on a line.

    Counts p with |p - center| < radius (strict) or <= radius. The center
    itself is excluded.
    """
    x = np.asarray(points, dtype=np.float64)
    if x.ndim == 2 and x.shape[1] == 1:
        x = x[:, 0]
    if x.ndim != 1:
        raise DataError("count_within expects a T x 1 matrix or a flat sequence")
    if not 0 <= center_index < x.size:
        raise DataError(f"center index {center_index} out of range for {x.size} points")
    if not radius > 0:
        raise DataError(f"radius must be positive, got {radius}")
    diff = np.abs(x - x[center_index])
    inside = diff < radius if strict else diff <= radius
    return int(np.count_nonzero(inside)) - 1  # the center always lands inside
