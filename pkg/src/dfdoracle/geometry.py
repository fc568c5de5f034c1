"""Planar primitives: distances, hulls, farthest/nearest queries, Delaunay graphs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .kdtree import KDForest

Point = tuple[float, float]
Curve = tuple[Point, ...]

# Below this size a plain scan beats building and walking a tree.
_SCAN_LIMIT = 24


def dist(p: Point, q: Point) -> float:
    """Euclidean distance.

    Every module measures distance through this exact expression (or its
    numpy twin in :mod:`dfdoracle.kdtree`), so distances computed along
    different routes compare equal bit for bit.
    """
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return math.sqrt(dx * dx + dy * dy)


def as_point(p) -> Point:
    x, y = float(p[0]), float(p[1])
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"non-finite coordinate in point {p!r}")
    return (x, y)


def as_curve(points: Iterable) -> Curve:
    """Validate and freeze a point sequence. Raises on empty input."""
    curve = tuple(as_point(p) for p in points)
    if not curve:
        raise ValueError("empty curve")
    return curve


@dataclass(frozen=True)
class Disk:
    center: Point
    radius: float

    def __post_init__(self):
        if not self.radius >= 0:
            raise ValueError("disk radius must be nonnegative")

    def contains(self, p: Point) -> bool:
        return dist(p, self.center) <= self.radius


@dataclass(frozen=True)
class Annulus:
    center: Point
    inner: float
    outer: float

    def __post_init__(self):
        if not 0 <= self.inner <= self.outer:
            raise ValueError("annulus needs 0 <= inner <= outer")

    def contains(self, p: Point) -> bool:
        return self.inner <= dist(p, self.center) <= self.outer


def _cross(o: Point, a: Point, b: Point) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Counterclockwise hull vertices (monotone chain), collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


class FarthestStructure:
    """Farthest-point queries over a fixed set, answered on its convex hull.

    Only hull vertices can be farthest from any query point. Small hulls are
    scanned; larger ones get a kd-tree with max-distance pruning, which is
    exact (distance along a hull is not unimodal, so plain binary search
    over the hull would not be).
    """

    __slots__ = ("hull", "_tree")

    def __init__(self, points: Iterable[Point] = (), hull: Sequence[Point] | None = None):
        self.hull = list(hull) if hull is not None else convex_hull(points)
        self._tree = None
        if len(self.hull) > _SCAN_LIMIT:
            h = np.array(self.hull)
            self._tree = KDForest(h[:, 0], h[:, 1], [(0, len(h) - 1)])

    def __len__(self) -> int:
        return len(self.hull)

    def query(self, q: Point) -> tuple[Point, float]:
        if not self.hull:
            raise ValueError("empty structure")
        if self._tree is None:
            best, arg = -1.0, None
            for p in self.hull:
                d = dist(p, q)
                if d > best:
                    best, arg = d, p
            return arg, best
        d, pos = self._tree.farthest(0, q[0], q[1])
        return self.hull[int(self._tree.ids[pos])], d

    def distance(self, q: Point) -> float:
        if self._tree is None:
            if not self.hull:
                raise ValueError("empty structure")
            return max(dist(p, q) for p in self.hull)
        return self._tree.farthest(0, q[0], q[1])[0]


class NearestStructure:
    """Nearest-point queries over a fixed set (scan when tiny, kd-tree otherwise)."""

    __slots__ = ("points", "_tree")

    def __init__(self, points: Iterable[Point]):
        self.points = list(points)
        self._tree = None
        if len(self.points) > _SCAN_LIMIT:
            a = np.array(self.points)
            self._tree = KDForest(a[:, 0], a[:, 1], [(0, len(a) - 1)])

    def __len__(self) -> int:
        return len(self.points)

    def query(self, q: Point) -> tuple[Point, float]:
        if not self.points:
            raise ValueError("empty structure")
        if self._tree is None:
            best, arg = math.inf, None
            for p in self.points:
                d = dist(p, q)
                if d < best:
                    best, arg = d, p
            return arg, best
        d, pos = self._tree.nearest(0, q[0], q[1])
        return self.points[int(self._tree.ids[pos])], d


def farthest(fs: FarthestStructure, q: Point) -> tuple[Point, float]:
    return fs.query(q)


def nearest(ns: NearestStructure, q: Point) -> tuple[Point, float]:
    return ns.query(q)


@dataclass(frozen=True)
class GeometricGraph:
    """Undirected graph on planar points; edges stored as sorted ``(i, j)``, ``i < j``."""

    points: Curve
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.points)
        seen = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        norm = []
        for i, j in self.edges:
            i, j = int(i), int(j)
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range")
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            e = (min(i, j), max(i, j))
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
            adj[i].append(j)
            adj[j].append(i)
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(a)) for a in adj))

    @classmethod
    def build(cls, points, edges) -> "GeometricGraph":
        return cls(tuple(as_point(p) for p in points), tuple(edges))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def m(self) -> int:
        return len(self.edges)

    def components(self) -> list[int]:
        """Component label per vertex."""
        label = [-1] * self.n
        for s in range(self.n):
            if label[s] >= 0:
                continue
            label[s] = s
            stack = [s]
            while stack:
                w = stack.pop()
                for x in self.adjacency[w]:
                    if label[x] < 0:
                        label[x] = s
                        stack.append(x)
        return label

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and len(set(self.components())) == 1


def delaunay(points: Sequence[Point]) -> GeometricGraph:
    """Edges of the Delaunay triangulation as a :class:`GeometricGraph`.

    Collinear input (or fewer than three points) degenerates to the chain
    through the points in lexicographic order.
    """
    pts = tuple(as_point(p) for p in points)
    if len(set(pts)) != len(pts):
        raise ValueError("duplicate input point")
    n = len(pts)
    order = sorted(range(n), key=lambda i: pts[i])
    chain = [(order[k], order[k + 1]) for k in range(n - 1)]
    if n < 3 or all(_cross(pts[order[0]], pts[order[-1]], p) == 0 for p in pts):
        return GeometricGraph(pts, tuple(chain))
    from scipy.spatial import Delaunay, QhullError

    try:
        tri = Delaunay(np.array(pts))
    except QhullError:
        return GeometricGraph(pts, tuple(chain))
    s = tri.simplices
    e = np.concatenate([s[:, [0, 1]], s[:, [1, 2]], s[:, [0, 2]]])
    e.sort(axis=1)
    e = np.unique(e, axis=0)
    return GeometricGraph(pts, tuple(map(tuple, e.tolist())))
