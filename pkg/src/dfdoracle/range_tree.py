"""Balanced tree over a curve's vertex sequence with per-node farthest/nearest structures.

Node ``[lo, hi]`` splits into ``[lo, mid]`` and ``[mid+1, hi]`` with
``mid = (lo + hi) // 2`` (the left child takes the first ``ceil(m/2)``
vertices). Indices are 0-based and inclusive throughout.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from .geometry import Curve, FarthestStructure, Point, as_curve, convex_hull, dist
from .kdtree import KDForest
from .stats import QueryStats

_DIRECT = 8


class RangeRef(NamedTuple):
    """Inclusive vertex range of a curve; ``reversed`` walks it from ``hi`` down to ``lo``."""

    lo: int
    hi: int
    reversed: bool = False


class CanonicalRangeTree:
    def __init__(self, P: Sequence[Point]):
        self.P: Curve = as_curve(P)
        n = self.n = len(self.P)
        self.lo: list[int] = [0]
        self.hi: list[int] = [n - 1]
        self.left: list[int] = [-1]
        self.right: list[int] = [-1]
        levels = [[0]]
        while True:
            nxt = []
            for v in levels[-1]:
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
            levels.append(nxt)
        self.levels = levels

        # farthest: convex hulls merged bottom-up
        self.far: list[FarthestStructure | None] = [None] * len(self.lo)
        for level in reversed(levels):
            for v in level:
                if self.hi[v] - self.lo[v] + 1 <= _DIRECT:
                    continue
                lc, rc = self.left[v], self.right[v]
                pts = self._hull_points(lc) + self._hull_points(rc)
                self.far[v] = FarthestStructure(hull=convex_hull(pts))

        # nearest: one kd forest per level, one tree per node
        xs = np.array([p[0] for p in self.P])
        ys = np.array([p[1] for p in self.P])
        self._near_forest: list[tuple[KDForest, int] | None] = [None] * len(self.lo)
        for level in levels:
            big = [v for v in level if self.hi[v] - self.lo[v] + 1 > _DIRECT]
            if not big:
                continue
            forest = KDForest(xs, ys, [(self.lo[v], self.hi[v]) for v in big])
            for k, v in enumerate(big):
                self._near_forest[v] = (forest, forest.roots[k])

    def _hull_points(self, v: int) -> list[Point]:
        fs = self.far[v]
        if fs is None:
            return list(self.P[self.lo[v]: self.hi[v] + 1])
        return fs.hull

    @property
    def node_count(self) -> int:
        return len(self.lo)

    @property
    def stored_points(self) -> int:
        return sum(self.hi[v] - self.lo[v] + 1 for v in range(len(self.lo)))

    # -- node-level queries ---------------------------------------------------

    def node_max(self, v: int, q: Point, stats: QueryStats | None = None) -> float:
        if stats is not None:
            stats.range_nodes += 1
        fs = self.far[v]
        if fs is None:
            qx, qy = q
            best = 0.0
            for p in self.P[self.lo[v]: self.hi[v] + 1]:
                dx = p[0] - qx
                dy = p[1] - qy
                d = math.sqrt(dx * dx + dy * dy)
                if d > best:
                    best = d
            return best
        return fs.distance(q)

    def node_min(self, v: int, q: Point, stats: QueryStats | None = None) -> float:
        if stats is not None:
            stats.range_nodes += 1
        entry = self._near_forest[v]
        if entry is None:
            return min(dist(p, q) for p in self.P[self.lo[v]: self.hi[v] + 1])
        forest, root = entry
        return forest.nearest(root, q[0], q[1])[0]

    def canonical(self, lo: int, hi: int) -> list[int]:
        """Canonical nodes covering ``[lo, hi]``, left to right."""
        self._check(lo, hi)
        out: list[int] = []
        stack = [0]
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

    def _check(self, lo: int, hi: int) -> None:
        if not (0 <= lo <= hi < self.n):
            raise ValueError(f"invalid range [{lo}, {hi}] for curve of {self.n} vertices")

    # -- range queries on plain indices --------------------------------------

    def dmax(self, lo: int, hi: int, q: Point, stats: QueryStats | None = None) -> float:
        if lo == hi:
            self._check(lo, hi)
            return dist(self.P[lo], q)
        return max(self.node_max(v, q, stats) for v in self.canonical(lo, hi))

    def dmin(self, lo: int, hi: int, q: Point, stats: QueryStats | None = None) -> float:
        if lo == hi:
            self._check(lo, hi)
            return dist(self.P[lo], q)
        return min(self.node_min(v, q, stats) for v in self.canonical(lo, hi))

    def prefix(self, lo: int, hi: int, a: Point, rad: float, stats: QueryStats | None = None):
        """Largest ``i`` in ``[lo, hi]`` with ``dmax(lo, i, a) <= rad``, or ``None``."""
        self._check(lo, hi)
        if dist(self.P[lo], a) > rad:
            return None
        for v in self.canonical(lo, hi):
            if self.node_max(v, a, stats) <= rad:
                continue
            while self.left[v] >= 0:
                lc = self.left[v]
                if self.node_max(lc, a, stats) <= rad:
                    v = self.right[v]
                else:
                    v = lc
            return self.lo[v] - 1
        return hi

    def suffix(self, lo: int, hi: int, b: Point, rad: float, stats: QueryStats | None = None):
        """Smallest ``j`` in ``[lo, hi]`` with ``dmax(j, hi, b) <= rad``, or ``None``."""
        self._check(lo, hi)
        if dist(self.P[hi], b) > rad:
            return None
        for v in reversed(self.canonical(lo, hi)):
            if self.node_max(v, b, stats) <= rad:
                continue
            while self.left[v] >= 0:
                rc = self.right[v]
                if self.node_max(rc, b, stats) <= rad:
                    v = self.left[v]
                else:
                    v = rc
            return self.lo[v] + 1
        return lo

    # -- RangeRef surface ------------------------------------------------------

    def d_max(self, r: RangeRef, q: Point, stats: QueryStats | None = None) -> float:
        return self.dmax(r.lo, r.hi, q, stats)

    def d_min(self, r: RangeRef, q: Point, stats: QueryStats | None = None) -> float:
        return self.dmin(r.lo, r.hi, q, stats)

    def longest_prefix(self, r: RangeRef, a: Point, rad: float, stats: QueryStats | None = None):
        """End index of the longest prefix (in traversal order) within ``rad`` of ``a``.

        For a reversed range the traversal starts at ``hi``, so this is the
        start index of the longest forward suffix.
        """
        if r.reversed:
            return self.suffix(r.lo, r.hi, a, rad, stats)
        return self.prefix(r.lo, r.hi, a, rad, stats)

    def longest_suffix(self, r: RangeRef, b: Point, rad: float, stats: QueryStats | None = None):
        if r.reversed:
            return self.prefix(r.lo, r.hi, b, rad, stats)
        return self.suffix(r.lo, r.hi, b, rad, stats)


def build(P: Sequence[Point]) -> CanonicalRangeTree:
    return CanonicalRangeTree(P)
