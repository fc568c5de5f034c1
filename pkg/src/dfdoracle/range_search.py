"""Disk, annulus, edge-pair and neighbor-augmented range queries on kd-trees.

All three indexes answer queries by canonical decomposition: kd nodes whose
box lies inside the query disk are taken whole, and only leaves that the
disk boundary crosses are tested point by point. :class:`QueryStats`
records how many of each were touched.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .geometry import Annulus, Disk, GeometricGraph, Point, as_curve
from .kdtree import KDForest, _box_min
from .stats import QueryStats


def _coords(points: Sequence[Point]) -> tuple[np.ndarray, np.ndarray]:
    a = np.array(points, dtype=float).reshape(-1, 2)
    return a[:, 0].copy(), a[:, 1].copy()


class DiskRangeIndex:
    """kd-tree over a static point set for disk and annulus queries."""

    def __init__(self, points: Sequence[Point]):
        self.points = as_curve(points)
        xs, ys = _coords(self.points)
        self.forest = KDForest(xs, ys, [(0, len(self.points) - 1)])

    def __len__(self) -> int:
        return len(self.points)

    @property
    def node_count(self) -> int:
        return self.forest.node_count

    def subset(self, node: int) -> list[int]:
        """Point indices of a canonical subset."""
        f = self.forest
        return f.ids[f.start[node]: f.end[node]].tolist()

    def disk_canonical(self, D: Disk, stats: QueryStats | None = None):
        """``(canonical nodes, individual point indices)`` covering exactly the points in ``D``."""
        (cx, cy), r = D.center, D.radius
        nodes, pos = self.forest.disk_canonical(0, cx, cy, r, stats)
        return nodes, self.forest.ids[pos].tolist() if pos else []

    def annulus_report(self, A: Annulus, stats: QueryStats | None = None) -> list[tuple[int, Point]]:
        """``(index, point)`` for every point with ``inner <= dist <= outer``, by index."""
        (cx, cy) = A.center
        pos = self.forest.annulus(0, cx, cy, A.inner, A.outer, stats)
        idx = sorted(self.forest.ids[pos].tolist()) if pos else []
        return [(i, self.points[i]) for i in idx]


class _SegmentLevels:
    """Balanced split of ``[0, n-1]`` into nodes, one list of nodes per depth."""

    def __init__(self, n: int):
        self.lo, self.hi, self.left, self.right = [0], [n - 1], [-1], [-1]
        self.levels = [[0]]
        while True:
            nxt = []
            for v in self.levels[-1]:
                a, b = self.lo[v], self.hi[v]
                if a == b:
                    continue
                mid = (a + b) // 2
                c = len(self.lo)
                self.lo += [a, mid + 1]
                self.hi += [mid, b]
                self.left += [-1, -1]
                self.right += [-1, -1]
                self.left[v], self.right[v] = c, c + 1
                nxt += [c, c + 1]
            if not nxt:
                break
            self.levels.append(nxt)

    def canonical(self, lo: int, hi: int) -> list[int]:
        out, stack = [], [0]
        while stack:
            v = stack.pop()
            a, b = self.lo[v], self.hi[v]
            if b < lo or a > hi:
                continue
            if lo <= a and b <= hi:
                out.append(v)
                continue
            stack += (self.right[v], self.left[v])
        return out


class EdgePairIndex:
    """Consecutive-vertex pair queries over index ranges of a curve.

    An outer balanced tree splits the edge indices ``k`` (edge ``p_k p_{k+1}``).
    Each outer node holds a kd-tree over the first endpoints ``p_k`` in its
    range; kd nodes also keep the bounding box of the successors
    ``p_{k+1}``. A query disk around ``b`` is decomposed inside each outer
    node, and each canonical kd subset is then tested against the disk
    around ``c`` through its successors and through its own points.
    """

    def __init__(self, P: Sequence[Point]):
        self.P = as_curve(P)
        self.n = len(self.P)
        self.edges = self.n - 1
        self._outer = None
        self._forest_of: list[tuple[KDForest, int]] = []
        if self.edges == 0:
            return
        xs, ys = _coords(self.P)
        fx, fy = xs[:-1], ys[:-1]
        sx, sy = xs[1:], ys[1:]
        outer = self._outer = _SegmentLevels(self.edges)
        self._forest_of = [None] * len(outer.lo)
        for level in outer.levels:
            forest = KDForest(fx, fy, [(outer.lo[v], outer.hi[v]) for v in level], extra=(sx, sy))
            for k, v in enumerate(level):
                self._forest_of[v] = (forest, forest.roots[k])

    @property
    def node_count(self) -> int:
        """Total kd nodes over all outer nodes."""
        seen = {id(f): f.node_count for f, _ in self._forest_of}
        return sum(seen.values())

    def edge_pair_exists(self, lo: int, hi: int, b: Point, c: Point, R: float,
                         stats: QueryStats | None = None) -> bool:
        """Is there ``k`` in ``[lo, hi-1]`` with ``p_k`` within ``R`` of ``b`` and
        ``p_{k+1}`` or ``p_k`` itself within ``R`` of ``c``?"""
        if not (0 <= lo <= hi < self.n):
            raise ValueError(f"invalid range [{lo}, {hi}] for curve of {self.n} vertices")
        if hi == lo:
            return False
        bx, by = b
        cx, cy = c
        for v in self._outer.canonical(lo, hi - 1):
            forest, root = self._forest_of[v]
            if self._search(forest, root, bx, by, cx, cy, R, stats):
                return True
        return False

    @staticmethod
    def _search(f: KDForest, root, bx, by, cx, cy, R, stats) -> bool:
        stack = [root]
        while stack:
            n = stack.pop()
            if stats is not None:
                stats.visited += 1
            if f.box_min(n, bx, by) > R:
                continue
            if f.box_max(n, bx, by) <= R:
                if stats is not None:
                    stats.canonical += 1
                if f.extra_box_min(n, cx, cy) > R and f.box_min(n, cx, cy) > R:
                    continue
                s, e = f.start[n], f.end[n]
                if (f.slice_dists(s, e, cx, cy, extra=True) <= R).any():
                    return True
                if (f.slice_dists(s, e, cx, cy) <= R).any():
                    return True
                continue
            if f.left[n] < 0:
                if stats is not None:
                    stats.leaves += 1
                s, e = f.start[n], f.end[n]
                inside = f.slice_dists(s, e, bx, by) <= R
                near_c = (f.slice_dists(s, e, cx, cy, extra=True) <= R) | (f.slice_dists(s, e, cx, cy) <= R)
                if (inside & near_c).any():
                    return True
                continue
            stack += (f.right[n], f.left[n])
        return False


class NeighborAugmentedIndex:
    """Disk queries over graph vertices where each canonical subset ``S`` also
    knows ``S`` plus all graph neighbors of ``S``.

    ``neighbor_disk_min`` returns the smallest distance from a target to a
    vertex that is inside the disk or adjacent to one inside it.
    """

    def __init__(self, G: GeometricGraph):
        self.graph = G
        xs, ys = _coords(G.points)
        self.xs, self.ys = xs, ys
        f = self.forest = KDForest(xs, ys, [(0, G.n - 1)])
        adj = G.adjacency
        nn = f.node_count
        aug: list[np.ndarray | None] = [None] * nn
        # children always have larger ids than their parent
        for node in range(nn - 1, -1, -1):
            lc = f.left[node]
            if lc < 0:
                members = f.ids[f.start[node]: f.end[node]].tolist()
                s = set(members)
                for m in members:
                    s.update(adj[m])
                aug[node] = np.array(sorted(s), dtype=np.int64)
            else:
                aug[node] = np.union1d(aug[lc], aug[f.right[node]])
        self.aug = aug
        self.ax0 = [float(xs[a].min()) for a in aug]
        self.ax1 = [float(xs[a].max()) for a in aug]
        self.ay0 = [float(ys[a].min()) for a in aug]
        self.ay1 = [float(ys[a].max()) for a in aug]

    @property
    def stored_points(self) -> int:
        return sum(len(a) for a in self.aug)

    def _aug_min(self, node: int, tx: float, ty: float) -> float:
        a = self.aug[node]
        dx = self.xs[a] - tx
        dy = self.ys[a] - ty
        return float(np.sqrt(dx * dx + dy * dy).min())

    def neighbor_disk_min(self, D: Disk, target: Point, stats: QueryStats | None = None,
                          stop_at: float | None = None) -> float | None:
        """Min distance from ``target`` to ``(P ∩ D) ∪ N(P ∩ D)``; ``None`` if the disk is empty.

        With ``stop_at`` the search returns early once some distance
        ``<= stop_at`` is found (the value is then an upper bound that
        already settles the comparison).
        """
        f = self.forest
        (cx, cy), r = D.center, D.radius
        tx, ty = target
        best = math.inf
        found = False
        stack = [0]
        while stack:
            n = stack.pop()
            if stats is not None:
                stats.visited += 1
            if f.box_min(n, cx, cy) > r:
                continue
            if f.box_max(n, cx, cy) <= r:
                if stats is not None:
                    stats.canonical += 1
                found = True
                if _box_min(self.ax0[n], self.ax1[n], self.ay0[n], self.ay1[n], tx, ty) < best:
                    best = min(best, self._aug_min(n, tx, ty))
            elif f.left[n] < 0:
                if stats is not None:
                    stats.leaves += 1
                s = f.start[n]
                d = f.slice_dists(s, f.end[n], cx, cy)
                for p in np.flatnonzero(d <= r).tolist():
                    found = True
                    w = int(f.ids[s + p])
                    cand = [w, *self.graph.adjacency[w]]
                    dx = self.xs[cand] - tx
                    dy = self.ys[cand] - ty
                    best = min(best, float(np.sqrt(dx * dx + dy * dy).min()))
            else:
                stack += (f.right[n], f.left[n])
                continue
            if stop_at is not None and best <= stop_at:
                return best
        return best if found else None
