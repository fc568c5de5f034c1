"""Static kd-trees laid out over contiguous slices of shared arrays.

A :class:`KDForest` builds one kd-tree per *group*, where a group is a
contiguous range of point indices. Every node owns a contiguous slice of
the forest's position arrays, so a node's point set (a canonical subset)
can be scanned with a single vectorized expression.

All distances go through the same ``sqrt(dx*dx + dy*dy)`` evaluation as
:func:`dfdoracle.geometry.dist`. Each IEEE operation in that expression is
monotone, so the box bounds below are exact bounds on the computed point
distances, not just on the real-valued ones. That is what lets kd pruning
agree bit-for-bit with brute force.
"""

from __future__ import annotations

import math

import numpy as np

from .stats import QueryStats

LEAF_SIZE = 8


def _box_min(x0: float, x1: float, y0: float, y1: float, qx: float, qy: float) -> float:
    if qx < x0:
        dx = x0 - qx
    elif qx > x1:
        dx = qx - x1
    else:
        dx = 0.0
    if qy < y0:
        dy = y0 - qy
    elif qy > y1:
        dy = qy - y1
    else:
        dy = 0.0
    return math.sqrt(dx * dx + dy * dy)


def _box_max(x0: float, x1: float, y0: float, y1: float, qx: float, qy: float) -> float:
    dx = max(abs(x0 - qx), abs(x1 - qx))
    dy = max(abs(y0 - qy), abs(y1 - qy))
    return math.sqrt(dx * dx + dy * dy)


def _segment_positions(starts: np.ndarray, sizes: np.ndarray) -> np.ndarray:
    total = int(sizes.sum())
    offsets = np.concatenate(([0], np.cumsum(sizes)[:-1]))
    return np.repeat(starts - offsets, sizes) + np.arange(total)


class KDForest:
    """kd-trees over disjoint index ranges of one point array.

    Parameters
    ----------
    xs, ys : ndarray
        Coordinates over the full index space.
    groups : sequence of (lo, hi)
        Inclusive, pairwise disjoint index ranges in increasing order; one
        tree is built per range.
    extra : (ndarray, ndarray), optional
        Secondary coordinates attached to each index (for example the
        successor vertex of a curve edge). Nodes keep a bounding box of
        these too.
    leaf_size : int
        Maximum number of points in a leaf.

    Splits alternate x/y by depth at the median, with ties broken by point
    index; the left child receives the first ``ceil(m/2)`` points.
    """

    def __init__(self, xs, ys, groups, extra=None, leaf_size: int = LEAF_SIZE):
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        los = np.array([g[0] for g in groups], dtype=np.int64)
        his = np.array([g[1] for g in groups], dtype=np.int64)
        sizes = his - los + 1
        if len(groups) and (sizes <= 0).any():
            raise ValueError("empty kd group")
        ids = _segment_positions(los, sizes) if len(groups) else np.zeros(0, dtype=np.int64)
        offsets = np.concatenate(([0], np.cumsum(sizes)[:-1])) if len(groups) else sizes

        start = offsets.tolist()
        end = (offsets + sizes).tolist()
        left = [-1] * len(start)
        right = [-1] * len(start)
        depth_of = [0] * len(start)
        self.roots = list(range(len(start)))

        level = [n for n in self.roots if end[n] - start[n] > leaf_size]
        depth = 0
        while level:
            st = np.array([start[n] for n in level], dtype=np.int64)
            en = np.array([end[n] for n in level], dtype=np.int64)
            sz = en - st
            pos = _segment_positions(st, sz)
            lab = np.repeat(np.arange(len(level)), sz)
            sub = ids[pos]
            key = xs[sub] if depth % 2 == 0 else ys[sub]
            ids[pos] = sub[np.lexsort((sub, key, lab))]
            nxt = []
            for n, s, e in zip(level, st.tolist(), en.tolist()):
                mid = s + (e - s + 1) // 2
                lc = len(start)
                start += [s, mid]
                end += [mid, e]
                left += [-1, -1]
                right += [-1, -1]
                depth_of += [depth + 1, depth + 1]
                left[n] = lc
                right[n] = lc + 1
                if mid - s > leaf_size:
                    nxt.append(lc)
                if e - mid > leaf_size:
                    nxt.append(lc + 1)
            level = nxt
            depth += 1

        self.ids = ids
        self.px = xs[ids]
        self.py = ys[ids]
        self.start = start
        self.end = end
        self.left = left
        self.right = right
        boxes = self._boxes(self.px, self.py, depth_of)
        self.x0, self.x1, self.y0, self.y1 = boxes
        if extra is not None:
            self.ex = np.asarray(extra[0], dtype=float)[ids]
            self.ey = np.asarray(extra[1], dtype=float)[ids]
            self.ex0, self.ex1, self.ey0, self.ey1 = self._boxes(self.ex, self.ey, depth_of)
        else:
            self.ex = self.ey = None

    def _boxes(self, px, py, depth_of):
        nn = len(self.start)
        start = np.array(self.start, dtype=np.int64)
        left = np.array(self.left, dtype=np.int64)
        right = np.array(self.right, dtype=np.int64)
        depth = np.array(depth_of, dtype=np.int64)
        x0 = np.empty(nn)
        x1 = np.empty(nn)
        y0 = np.empty(nn)
        y1 = np.empty(nn)
        if nn:
            leaves = np.flatnonzero(left < 0)
            leaves = leaves[np.argsort(start[leaves], kind="stable")]
            ls = start[leaves]
            x0[leaves] = np.minimum.reduceat(px, ls)
            x1[leaves] = np.maximum.reduceat(px, ls)
            y0[leaves] = np.minimum.reduceat(py, ls)
            y1[leaves] = np.maximum.reduceat(py, ls)
            for d in range(int(depth.max()), -1, -1):
                inner = np.flatnonzero((depth == d) & (left >= 0))
                if not len(inner):
                    continue
                lc, rc = left[inner], right[inner]
                x0[inner] = np.minimum(x0[lc], x0[rc])
                x1[inner] = np.maximum(x1[lc], x1[rc])
                y0[inner] = np.minimum(y0[lc], y0[rc])
                y1[inner] = np.maximum(y1[lc], y1[rc])
        return x0.tolist(), x1.tolist(), y0.tolist(), y1.tolist()

    @property
    def node_count(self) -> int:
        return len(self.start)

    def size(self, node: int) -> int:
        return self.end[node] - self.start[node]

    def box_min(self, node: int, qx: float, qy: float) -> float:
        return _box_min(self.x0[node], self.x1[node], self.y0[node], self.y1[node], qx, qy)

    def box_max(self, node: int, qx: float, qy: float) -> float:
        return _box_max(self.x0[node], self.x1[node], self.y0[node], self.y1[node], qx, qy)

    def extra_box_min(self, node: int, qx: float, qy: float) -> float:
        return _box_min(self.ex0[node], self.ex1[node], self.ey0[node], self.ey1[node], qx, qy)

    def extra_box_max(self, node: int, qx: float, qy: float) -> float:
        return _box_max(self.ex0[node], self.ex1[node], self.ey0[node], self.ey1[node], qx, qy)

    def slice_dists(self, s: int, e: int, qx: float, qy: float, extra: bool = False) -> np.ndarray:
        if extra:
            dx = self.ex[s:e] - qx
            dy = self.ey[s:e] - qy
        else:
            dx = self.px[s:e] - qx
            dy = self.py[s:e] - qy
        return np.sqrt(dx * dx + dy * dy)

    # -- searches -----------------------------------------------------------

    def nearest(self, root: int, qx: float, qy: float, stats: QueryStats | None = None):
        """Return ``(distance, position)`` of the point of ``root``'s tree closest to q."""
        best, best_pos = math.inf, -1
        stack = [root]
        left, right, start, end = self.left, self.right, self.start, self.end
        while stack:
            n = stack.pop()
            if stats is not None:
                stats.visited += 1
            if self.box_min(n, qx, qy) >= best:
                continue
            lc = left[n]
            if lc < 0:
                d = self.slice_dists(start[n], end[n], qx, qy)
                k = int(np.argmin(d))
                if d[k] < best:
                    best, best_pos = float(d[k]), start[n] + k
                continue
            rc = right[n]
            if self.box_min(lc, qx, qy) <= self.box_min(rc, qx, qy):
                stack += (rc, lc)
            else:
                stack += (lc, rc)
        return best, best_pos

    def farthest(self, root: int, qx: float, qy: float, stats: QueryStats | None = None):
        """Return ``(distance, position)`` of the point of ``root``'s tree farthest from q."""
        best, best_pos = -1.0, -1
        stack = [root]
        left, right, start, end = self.left, self.right, self.start, self.end
        while stack:
            n = stack.pop()
            if stats is not None:
                stats.visited += 1
            if self.box_max(n, qx, qy) <= best:
                continue
            lc = left[n]
            if lc < 0:
                d = self.slice_dists(start[n], end[n], qx, qy)
                k = int(np.argmax(d))
                if d[k] > best:
                    best, best_pos = float(d[k]), start[n] + k
                continue
            rc = right[n]
            if self.box_max(lc, qx, qy) >= self.box_max(rc, qx, qy):
                stack += (rc, lc)
            else:
                stack += (lc, rc)
        return best, best_pos

    def disk_canonical(self, root: int, cx: float, cy: float, r: float,
                       stats: QueryStats | None = None):
        """Decompose the points of one tree inside the closed disk.

        Returns ``(nodes, positions)``: kd nodes lying wholly inside the
        disk, and positions from boundary-crossing leaves that passed the
        pointwise test.
        """
        nodes: list[int] = []
        positions: list[int] = []
        stack = [root]
        left, right, start, end = self.left, self.right, self.start, self.end
        while stack:
            n = stack.pop()
            if stats is not None:
                stats.visited += 1
            if self.box_min(n, cx, cy) > r:
                continue
            if self.box_max(n, cx, cy) <= r:
                nodes.append(n)
                if stats is not None:
                    stats.canonical += 1
                continue
            lc = left[n]
            if lc < 0:
                if stats is not None:
                    stats.leaves += 1
                s = start[n]
                d = self.slice_dists(s, end[n], cx, cy)
                positions.extend((np.flatnonzero(d <= r) + s).tolist())
                continue
            stack += (right[n], lc)
        return nodes, positions

    def annulus(self, root: int, cx: float, cy: float, r1: float, r2: float,
                stats: QueryStats | None = None) -> list[int]:
        """Positions of points with ``r1 <= dist <= r2`` from the center."""
        out: list[int] = []
        stack = [root]
        left, right, start, end = self.left, self.right, self.start, self.end
        while stack:
            n = stack.pop()
            if stats is not None:
                stats.visited += 1
            lo = self.box_min(n, cx, cy)
            hi = self.box_max(n, cx, cy)
            if lo > r2 or hi < r1:
                continue
            if lo >= r1 and hi <= r2:
                if stats is not None:
                    stats.canonical += 1
                out.extend(range(start[n], end[n]))
                continue
            lc = left[n]
            if lc < 0:
                if stats is not None:
                    stats.leaves += 1
                s = start[n]
                d = self.slice_dists(s, end[n], cx, cy)
                out.extend((np.flatnonzero((d >= r1) & (d <= r2)) + s).tolist())
                continue
            stack += (right[n], lc)
        return out
