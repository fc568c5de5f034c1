"""Independent slow oracles used only by the tests."""

import math


def euclid(p, q):
    return math.hypot(p[0] - q[0], p[1] - q[1])


def walks(m, n):
    """Every monotone coupling walk from (0, 0) to (m-1, n-1)."""
    def rec(i, j):
        if (i, j) == (m - 1, n - 1):
            yield [(i, j)]
            return
        for di, dj in ((1, 0), (0, 1), (1, 1)):
            k, l = i + di, j + dj
            if k < m and l < n:
                for rest in rec(k, l):
                    yield [(i, j)] + rest
    yield from rec(0, 0)


def ddf_by_walks(A, B):
    """Minimum over all walks of the maximum pair distance (math.hypot distances)."""
    return min(max(euclid(A[i], B[j]) for i, j in w) for w in walks(len(A), len(B)))




def simple_paths(adj, u, v):
    if u == v:
        yield [u]
        return
    stack = [(u, [u])]
    while stack:
        w, path = stack.pop()
        for x in adj[w]:
            if x in path:
                continue
            if x == v:
                yield path + [v]
            else:
                stack.append((x, path + [x]))


def graph_ddf_by_paths(points, adj, u, v, Q):
    best = math.inf
    for p in simple_paths(adj, u, v):
        best = min(best, ddf_by_walks([points[w] for w in p], Q))
    return best


