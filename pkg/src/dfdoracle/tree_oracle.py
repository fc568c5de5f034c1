"""Fréchet queries along paths of a geometric tree via heavy-path decomposition.

The tree is rooted at vertex 0 and split into heavy paths, each stored top
down and preprocessed as a curve. The path between two vertices is a short
list of oriented pieces of heavy paths; a dynamic program over the piece
boundaries combines per-piece curve queries into the exact distance.
"""

from __future__ import annotations

from collections import deque
from typing import NamedTuple, Sequence

from .curve_oracle import MAX_QUERY, CurveOracle
from .geometry import GeometricGraph, Point, as_point
from .range_tree import RangeRef
from .stats import QueryStats


class Piece(NamedTuple):
    path: int
    range: RangeRef


class TreeOracle:
    def __init__(self, T: GeometricGraph, seed: int = 0):
        if not T.is_tree():
            raise ValueError("input graph is not a tree")
        self.tree = T
        n = T.n
        parent = [-1] * n
        order = []
        seen = [False] * n
        seen[0] = True
        queue = deque([0])
        while queue:
            w = queue.popleft()
            order.append(w)
            for x in T.adjacency[w]:
                if not seen[x]:
                    seen[x] = True
                    parent[x] = w
                    queue.append(x)
        size = [1] * n
        for w in reversed(order):
            if parent[w] >= 0:
                size[parent[w]] += size[w]
        heavy = [-1] * n
        for w in order:
            kids = [x for x in T.adjacency[w] if x != parent[w]]
            if kids:
                heavy[w] = min(kids, key=lambda x: (-size[x], x))
        self.parent = parent
        self.depth = [0] * n
        for w in order:
            if parent[w] >= 0:
                self.depth[w] = self.depth[parent[w]] + 1

        self.path_of = [-1] * n
        self.pos = [-1] * n
        self.paths: list[list[int]] = []
        for w in order:
            if self.path_of[w] >= 0:
                continue
            pid = len(self.paths)
            path = []
            x = w
            while x >= 0:
                self.path_of[x] = pid
                self.pos[x] = len(path)
                path.append(x)
                x = heavy[x]
            self.paths.append(path)
        self.oracles = [
            CurveOracle([T.points[w] for w in path], seed=seed + k) for k, path in enumerate(self.paths)
        ]

    def head(self, w: int) -> int:
        return self.paths[self.path_of[w]][0]

    def decompose_path(self, u: int, v: int) -> list[Piece]:
        """Oriented heavy-path pieces whose concatenation is the tree path from u to v."""
        n = self.tree.n
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError("vertex out of range")
        front: list[Piece] = []
        back: list[Piece] = []
        while self.path_of[u] != self.path_of[v]:
            hu, hv = self.head(u), self.head(v)
            if self.depth[hu] >= self.depth[hv]:
                front.append(Piece(self.path_of[u], RangeRef(0, self.pos[u], True)))
                u = self.parent[hu]
            else:
                back.append(Piece(self.path_of[v], RangeRef(0, self.pos[v], False)))
                v = self.parent[hv]
        pu, pv = self.pos[u], self.pos[v]
        if pu <= pv:
            front.append(Piece(self.path_of[u], RangeRef(pu, pv, False)))
        else:
            front.append(Piece(self.path_of[u], RangeRef(pv, pu, True)))
        return front + back[::-1]

    def piece_vertices(self, piece: Piece) -> list[int]:
        r = piece.range
        seq = self.paths[piece.path][r.lo: r.hi + 1]
        return seq[::-1] if r.reversed else seq

    def query(self, u: int, v: int, Q: Sequence[Point], stats: QueryStats | None = None) -> float:
        Q = [as_point(q) for q in Q]
        if not Q:
            raise ValueError("empty curve")
        if len(Q) > MAX_QUERY:
            raise ValueError("query size unsupported")
        pieces = self.decompose_path(u, v)
        m, k = len(pieces), len(Q)
        memo: dict[tuple[int, int, int], float] = {}

        def piece_cost(j: int, l1: int, l2: int) -> float:
            key = (j, l1, l2)
            if key not in memo:
                pc = pieces[j]
                memo[key] = self.oracles[pc.path].query(pc.range, Q[l1: l2 + 1], stats)
            return memo[key]

        # best[l] = distance between pieces j..m-1 and Q[l:]; the walk crosses
        # each piece boundary from (last of piece j, q_x) to (first of piece j+1, q_y)
        # with y in {x, x+1}
        best = [piece_cost(m - 1, l, k - 1) for l in range(k)]
        for j in range(m - 2, -1, -1):
            nxt = best
            best = []
            for l in range(k):
                val = float("inf")
                for x in range(l, k):
                    here = piece_cost(j, l, x)
                    tail = nxt[x] if x + 1 >= k else min(nxt[x], nxt[x + 1])
                    val = min(val, max(here, tail))
                best.append(val)
        return best[0]


def build(T: GeometricGraph, seed: int = 0) -> TreeOracle:
    return TreeOracle(T, seed)
