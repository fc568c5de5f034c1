"""Brute-force ground truth for discrete Fréchet distances.

These routines are deliberately simple. The fast oracles elsewhere in the
package are tested against them, so nothing here shares code with those
oracles except :func:`dfdoracle.geometry.dist`.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

from .geometry import GeometricGraph, Point, dist

Walk = list[tuple[int, int]]


def _check(A, B):
    if len(A) == 0 or len(B) == 0:
        raise ValueError("empty curve")


def ddf_table(A: Sequence[Point], B: Sequence[Point]) -> list[list[float]]:
    """Full DP table; entry ``[i][j]`` is the distance between ``A[:i+1]`` and ``B[:j+1]``."""
    _check(A, B)
    m, n = len(A), len(B)
    T = [[0.0] * n for _ in range(m)]
    for i in range(m):
        a = A[i]
        row = T[i]
        prev = T[i - 1] if i else None
        for j in range(n):
            d = dist(a, B[j])
            if i == 0 and j == 0:
                best = d
            elif i == 0:
                best = row[j - 1]
            elif j == 0:
                best = prev[0]
            else:
                best = min(prev[j], row[j - 1], prev[j - 1])
            row[j] = d if d > best else best
    return T


def ddf(A: Sequence[Point], B: Sequence[Point]) -> float:
    """Discrete Fréchet distance by the O(|A||B|) dynamic program.

    >>> ddf([(0.0, 0.0), (2.0, 0.0)], [(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]) == 2 ** 0.5
    True
    """
    return ddf_table(A, B)[-1][-1]


def optimal_walk(A: Sequence[Point], B: Sequence[Point]) -> Walk:
    """One walk (0-based index pairs) whose cost equals :func:`ddf`."""
    T = ddf_table(A, B)
    i, j = len(A) - 1, len(B) - 1
    walk = [(i, j)]
    while (i, j) != (0, 0):
        steps = []
        if i and j:
            steps.append((T[i - 1][j - 1], i - 1, j - 1))
        if i:
            steps.append((T[i - 1][j], i - 1, j))
        if j:
            steps.append((T[i][j - 1], i, j - 1))
        _, i, j = min(steps)
        walk.append((i, j))
    walk.reverse()
    return walk


def walk_cost(A, B, walk: Walk) -> float:
    if walk[0] != (0, 0) or walk[-1] != (len(A) - 1, len(B) - 1):
        raise ValueError("walk must start at (0, 0) and end at the last pair")
    for (i, j), (k, l) in zip(walk, walk[1:]):
        if (k - i, l - j) not in ((1, 0), (0, 1), (1, 1)):
            raise ValueError(f"illegal walk step {(i, j)} -> {(k, l)}")
    return max(dist(A[i], B[j]) for i, j in walk)


def ddf_decision(A: Sequence[Point], B: Sequence[Point], r: float) -> bool:
    """True iff ``ddf(A, B) <= r``, by a boolean reachability DP."""
    _check(A, B)
    n = len(B)
    prev = None
    for i, a in enumerate(A):
        row = [False] * n
        for j in range(n):
            if dist(a, B[j]) > r:
                continue
            if i == 0 and j == 0:
                row[j] = True
            else:
                row[j] = (j > 0 and row[j - 1]) or (prev is not None and (prev[j] or (j > 0 and prev[j - 1])))
        prev = row
    return prev[-1]


# -- graphs ---------------------------------------------------------------


def tree_path(G: GeometricGraph, u: int, v: int) -> list[int]:
    """Vertex sequence of the (BFS) shortest-hop path from u to v."""
    parent = {u: u}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        if w == v:
            break
        for x in G.adjacency[w]:
            if x not in parent:
                parent[x] = w
                queue.append(x)
    if v not in parent:
        raise ValueError("no path")
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def _product_reachable(G: GeometricGraph, u: int, v: int, Q, r: float) -> bool:
    k = len(Q)
    ok = lambda w, j: dist(G.points[w], Q[j]) <= r  # noqa: E731
    if not ok(u, 0):
        return False
    seen = {(u, 0)}
    stack = [(u, 0)]
    while stack:
        w, j = stack.pop()
        if w == v and j == k - 1:
            return True
        nxt = [(x, j) for x in G.adjacency[w]]
        if j + 1 < k:
            nxt.append((w, j + 1))
            nxt += [(x, j + 1) for x in G.adjacency[w]]
        for s in nxt:
            if s not in seen and ok(*s):
                seen.add(s)
                stack.append(s)
    return False


def _simple_paths(G: GeometricGraph, u: int, v: int):
    on_path = {u}
    path = [u]
    iters = [iter(G.adjacency[u])]
    if u == v:
        yield [u]
        return
    while iters:
        x = next(iters[-1], None)
        if x is None:
            iters.pop()
            on_path.discard(path.pop())
            continue
        if x in on_path:
            continue
        if x == v:
            yield path + [v]
            continue
        path.append(x)
        on_path.add(x)
        iters.append(iter(G.adjacency[x]))


def ddf_graph_decision(G: GeometricGraph, u: int, v: int, Q: Sequence[Point], r: float) -> bool:
    """True iff some simple u–v path Π has ``ddf(Q, Π) <= r``.

    For ``|Q| <= 2`` this is reachability in the product graph of G and Q
    (states ``(vertex, query index)``). With at most two query points, any
    walk in G can be shortcut to a simple path without raising the cost,
    so walks and paths agree. With three or more query points a walk can
    backtrack into a side branch, so trees use their unique path and other
    graphs enumerate simple paths (exponential; small inputs only).
    """
    if len(Q) == 0:
        raise ValueError("empty curve")
    comp = G.components()
    if comp[u] != comp[v]:
        raise ValueError("no path")
    if len(Q) <= 2:
        return _product_reachable(G, u, v, Q, r)
    if G.m == G.n - len(set(comp)):  # forest
        path = tree_path(G, u, v)
        return ddf_decision([G.points[w] for w in path], Q, r)
    return any(ddf_decision([G.points[w] for w in p], Q, r) for p in _simple_paths(G, u, v))


def ddf_graph(G: GeometricGraph, u: int, v: int, Q: Sequence[Point]) -> float:
    """Minimum over u–v paths of the discrete Fréchet distance to Q.

    Binary search over the sorted vertex-to-query distances with
    :func:`ddf_graph_decision` as the test.
    """
    cands = sorted({dist(p, q) for p in G.points for q in Q})
    lo, hi = 0, len(cands) - 1
    if not ddf_graph_decision(G, u, v, Q, cands[hi]):
        raise AssertionError("largest candidate must be feasible")
    while lo < hi:
        mid = (lo + hi) // 2
        if ddf_graph_decision(G, u, v, Q, cands[mid]):
            hi = mid
        else:
            lo = mid + 1
    return cands[lo]


def distance_candidates(A, B) -> list[float]:
    """Sorted distinct inter-vertex distances."""
    return sorted({dist(a, b) for a in A for b in B})

