"""Instance generators and empirical graph measurements.

Random generators take an explicit seed and are deterministic. Koch curves
follow the usual one-third replacement with an equilateral bump to the
left of each directed edge.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .geometry import Curve, GeometricGraph, Point, delaunay, dist

KOCH_MAX = 12


def koch(n: int) -> Curve:
    """Koch curve after ``n`` replacement rounds: ``4**n + 1`` vertices from (0,0) to (1,0)."""
    if n < 0:
        raise ValueError("koch level must be nonnegative")
    if n > KOCH_MAX:
        raise ValueError("instance too large")
    pts = np.array([[0.0, 0.0], [1.0, 0.0]])
    c, s = 0.5, math.sqrt(3.0) / 2.0
    for _ in range(n):
        u, v = pts[:-1], pts[1:]
        step = (v - u) / 3.0
        u1 = u + step
        v1 = u + 2.0 * step
        apex = u1 + np.column_stack((c * step[:, 0] - s * step[:, 1], s * step[:, 0] + c * step[:, 1]))
        out = np.empty((4 * len(u) + 1, 2))
        out[0:-1:4] = u
        out[1::4] = u1
        out[2::4] = apex
        out[3::4] = v1
        out[-1] = pts[-1]
        pts = out
    return tuple(map(tuple, pts.tolist()))


def curve_length(P: Sequence[Point]) -> float:
    return math.fsum(dist(p, q) for p, q in zip(P, P[1:]))


def random_points(n: int, seed: int) -> list[Point]:
    """``n`` points uniform in the unit square."""
    if n < 1:
        raise ValueError("need at least one point")
    a = np.random.default_rng(seed).random((n, 2))
    return list(map(tuple, a.tolist()))


def random_curve(n: int, seed: int) -> Curve:
    return tuple(random_points(n, seed))


def random_tree(n: int, seed: int) -> GeometricGraph:
    """Random recursive tree (vertex ``i`` hangs off a uniform earlier vertex) on random points."""
    if n < 1:
        raise ValueError("need at least one vertex")
    rng = np.random.default_rng(seed)
    pts = list(map(tuple, rng.random((n, 2)).tolist()))
    parents = [int(rng.integers(0, i)) for i in range(1, n)]
    return GeometricGraph.build(pts, [(p, i) for i, p in enumerate(parents, start=1)])


def random_delaunay(n: int, seed: int) -> GeometricGraph:
    return delaunay(random_points(n, seed))


def path_graph(P: Sequence[Point]) -> GeometricGraph:
    return GeometricGraph.build(P, [(i, i + 1) for i in range(len(P) - 1)])


def _bounded_distance(adj, w: dict, s: int, target: int, limit: float) -> float:
    """Shortest-path length from s to target, or inf if it exceeds ``limit``."""
    best = {s: 0.0}
    heap = [(0.0, s)]
    while heap:
        d, x = heapq.heappop(heap)
        if x == target:
            return d
        if d > best.get(x, math.inf):
            continue
        for y in adj[x]:
            nd = d + w[(x, y)]
            if nd <= limit and nd < best.get(y, math.inf):
                best[y] = nd
                heapq.heappush(heap, (nd, y))
    return math.inf


def greedy_spanner(points: Sequence[Point], t: float) -> GeometricGraph:
    """Greedy t-spanner: scan pairs by length, keep an edge unless the graph
    built so far already connects its endpoints within stretch ``t``."""
    if not t > 1:
        raise ValueError("stretch factor must exceed 1")
    pts = [tuple(map(float, p)) for p in points]
    n = len(pts)
    pairs = sorted((dist(pts[i], pts[j]), i, j) for i in range(n) for j in range(i + 1, n))
    adj: list[list[int]] = [[] for _ in range(n)]
    w: dict[tuple[int, int], float] = {}
    edges = []
    for d, i, j in pairs:
        if _bounded_distance(adj, w, i, j, t * d) <= t * d:
            continue
        adj[i].append(j)
        adj[j].append(i)
        w[(i, j)] = w[(j, i)] = d
        edges.append((i, j))
    return GeometricGraph.build(pts, edges)


def spanner_stretch(G: GeometricGraph, sources: Sequence[int] | None = None) -> float:
    """Largest ratio of graph distance to Euclidean distance over vertex pairs
    (pairs with at least one endpoint in ``sources``, all pairs by default).
    Disconnected pairs give ``inf``."""
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import dijkstra

    n = G.n
    if n < 2:
        return 1.0
    e = np.array(G.edges, dtype=np.int64).reshape(-1, 2)
    pts = np.array(G.points)
    wt = np.sqrt(((pts[e[:, 0]] - pts[e[:, 1]]) ** 2).sum(axis=1))
    A = csr_matrix((wt, (e[:, 0], e[:, 1])), shape=(n, n))
    src = np.arange(n) if sources is None else np.asarray(sources, dtype=np.int64)
    D = dijkstra(A, directed=False, indices=src)
    eu = np.sqrt(((pts[src][:, None, :] - pts[None, :, :]) ** 2).sum(axis=2))
    mask = eu > 0
    return float((D[mask] / eu[mask]).max()) if mask.any() else 1.0


@dataclass
class LocalityReport:
    samples: int
    t_hat: float
    worst: list = field(default_factory=list)  # per disk: (center, radius, p, q, scale)


def _disk_scale(G: GeometricGraph, center: Point, radius: float):
    """Smallest s >= 1 such that all points of ``G`` in the disk are connected
    inside the disk scaled by s, with the last pair to be joined."""
    pts = G.points
    d = [dist(p, center) for p in pts]
    order = sorted(range(G.n), key=lambda i: (d[i], i))
    # pair disks put both endpoints on the boundary; absorb rounding there
    inside = [i for i in order if d[i] <= radius * (1 + 1e-12)]
    if len(inside) < 2:
        return 1.0, None
    parent = list(range(G.n))
    count = [0] * G.n  # in-disk points per component root
    for i in inside:
        count[i] = 1

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    added = [False] * G.n
    comps = len(inside)
    rep = {i: i for i in inside}  # smallest in-disk index per root
    for i in order:
        added[i] = True
        for j in G.adjacency[i]:
            if not added[j]:
                continue
            ri, rj = find(i), find(j)
            if ri == rj:
                continue
            joined = count[ri] > 0 and count[rj] > 0
            pair = (rep.get(ri), rep.get(rj))
            parent[rj] = ri
            count[ri] += count[rj]
            if rj in rep:
                rep[ri] = min(rep.get(ri, rep[rj]), rep[rj])
            if joined:
                comps -= 1
                if comps == 1:
                    s = d[i] / radius if radius > 0 else (1.0 if d[i] == 0 else math.inf)
                    return max(1.0, s), pair
    return math.inf, None


def estimate_locality(G: GeometricGraph, samples: int = 200, seed: int = 0,
                      exhaustive_limit: int = 128) -> LocalityReport:
    """Sampled lower bound on the locality parameter of ``G``.

    Disks come from vertex pairs (the smallest disk holding both) and from
    random centers with a radius reaching a random vertex. For graphs with
    at most ``exhaustive_limit`` vertices every pair disk is included.
    """
    rng = np.random.default_rng(seed)
    pts = G.points
    n = G.n
    disks = []
    if n <= exhaustive_limit:
        for i in range(n):
            for j in range(i + 1, n):
                p, q = pts[i], pts[j]
                disks.append((((p[0] + q[0]) / 2, (p[1] + q[1]) / 2), dist(p, q) / 2))
    lo = np.min(np.array(pts), axis=0)
    hi = np.max(np.array(pts), axis=0)
    for k in range(samples):
        if n >= 2 and k % 2 == 0:
            i, j = rng.choice(n, size=2, replace=False).tolist()
            p, q = pts[i], pts[j]
            disks.append((((p[0] + q[0]) / 2, (p[1] + q[1]) / 2), dist(p, q) / 2))
        else:
            c = tuple((lo + rng.random(2) * (hi - lo)).tolist())
            w = pts[int(rng.integers(0, n))]
            disks.append((c, dist(c, w)))
    worst = []
    t_hat = 1.0
    for c, r in disks:
        s, pair = _disk_scale(G, c, r)
        if pair is not None:
            worst.append((c, r, pair[0], pair[1], s))
        t_hat = max(t_hat, s)
    return LocalityReport(len(disks), t_hat, worst)
