"""Segment queries against all paths of a local geometric graph.

For a segment ``ab`` and vertices ``u, v`` the oracle returns the smallest
``r`` such that ``a`` is within ``r`` of ``u``, ``b`` within ``r`` of ``v``,
and some vertex within ``r`` of ``a`` is, or is adjacent to, a vertex within
``r`` of ``b``. On 1-local graphs (Delaunay triangulations, for example)
that is exactly the smallest discrete Fréchet distance from ``ab`` to a
``u``-``v`` path. On t-local graphs the true distance for ``a = u``,
``b = v`` lies in ``[r, (t+1) r / 2]``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .geometry import Annulus, Disk, GeometricGraph, Point, as_point, dist
from .range_search import DiskRangeIndex, NeighborAugmentedIndex
from .stats import QueryStats


@dataclass(frozen=True)
class SegmentQuery:
    u: int
    v: int
    a: Point | None = None  # defaults to the point of u
    b: Point | None = None  # defaults to the point of v


class LocalGraphOracle:
    def __init__(self, G: GeometricGraph, t: float = 1.0, seed: int = 0):
        if not t >= 1:
            raise ValueError("locality parameter t must be >= 1")
        if G.n == 0:
            raise ValueError("empty graph")
        self.graph = G
        self.t = float(t)
        self.seed = int(seed)
        self.edges = NeighborAugmentedIndex(G)
        self.vertices = DiskRangeIndex(G.points)
        self._component = G.components()
        self._counter = itertools.count()

    def _resolve(self, q: SegmentQuery) -> tuple[int, int, Point, Point]:
        n = self.graph.n
        if not (0 <= q.u < n and 0 <= q.v < n):
            raise ValueError("vertex out of range")
        a = self.graph.points[q.u] if q.a is None else as_point(q.a)
        b = self.graph.points[q.v] if q.b is None else as_point(q.b)
        return q.u, q.v, a, b

    def decide_segment(self, q: SegmentQuery, d: float, stats: QueryStats | None = None) -> bool:
        u, v, a, b = self._resolve(q)
        return self._decide(u, v, a, b, d, stats)

    def _decide(self, u, v, a, b, d, stats) -> bool:
        pts = self.graph.points
        if stats is not None:
            stats.decisions += 1
        if dist(a, pts[u]) > d or dist(b, pts[v]) > d:
            return False
        got = self.edges.neighbor_disk_min(Disk(a, d), b, stats, stop_at=d)
        return got is not None and got <= d

    def query_segment(self, q: SegmentQuery, stats: QueryStats | None = None,
                      seed: int | None = None) -> float:
        u, v, a, b = self._resolve(q)
        if self._component[u] != self._component[v]:
            raise ValueError("no path")
        pts = self.graph.points
        decide = lambda d: self._decide(u, v, a, b, d, stats)  # noqa: E731
        low = max(dist(a, pts[u]), dist(b, pts[v]))
        if decide(low):
            return low
        n = self.graph.n
        if seed is None:
            seed = next(self._counter)
        gen = np.random.default_rng([self.seed, seed])
        size = max(1, math.isqrt(2 * n))
        ks = gen.integers(0, n, size=size).tolist()
        side = gen.integers(0, 2, size=size).tolist()
        # the largest candidate is always accepted: every vertex lies in the disk
        top = max(self._far(a), self._far(b))
        sample = sorted({x for x in (dist((a, b)[s], pts[k]) for k, s in zip(ks, side)) if low < x < top})
        sample.append(top)
        left, right = 0, len(sample) - 1
        while left < right:
            mid = (left + right) // 2
            if decide(sample[mid]):
                right = mid
            else:
                left = mid + 1
        high = sample[left]
        below = sample[left - 1] if left else low
        cands = set()
        for c in (a, b):
            for _, p in self.vertices.annulus_report(Annulus(c, below, high), stats):
                x = dist(p, c)
                if below < x <= high:
                    cands.add(x)
        cands = sorted(cands)
        left, right = 0, len(cands) - 1
        while left < right:
            mid = (left + right) // 2
            if decide(cands[mid]):
                right = mid
            else:
                left = mid + 1
        return cands[left]

    def _far(self, c: Point) -> float:
        f = self.vertices.forest
        return f.farthest(0, c[0], c[1])[0]


def build(G: GeometricGraph, t: float = 1.0, seed: int = 0) -> LocalGraphOracle:
    return LocalGraphOracle(G, t, seed)
