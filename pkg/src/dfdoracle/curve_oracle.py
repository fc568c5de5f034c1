"""Discrete Fréchet distance between a preprocessed curve and query curves of 1 to 4 vertices.

Queries may target any vertex range ``[lo, hi]`` (0-based, inclusive) of
the preprocessed curve. Every returned distance is one of the computed
vertex-to-query distances, so answers compare equal to the brute-force
dynamic program bit for bit.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geometry import Annulus, Point, as_curve, as_point, dist
from .range_search import DiskRangeIndex, EdgePairIndex
from .range_tree import CanonicalRangeTree, RangeRef
from .stats import QueryStats

MAX_QUERY = 4


@dataclass(frozen=True)
class FeasibilityOutcome:
    feasible: bool
    prefix_index: int | None  # end of the longest prefix near a
    suffix_index: int | None  # start of the longest suffix near c


def _below(x: float) -> float:
    return math.nextafter(x, -math.inf)


class CurveOracle:
    def __init__(self, P: Sequence[Point], seed: int = 0):
        self.P = as_curve(P)
        self.n = len(self.P)
        self.seed = int(seed)
        self.tree = CanonicalRangeTree(self.P)
        self.edges = EdgePairIndex(self.P)
        self.vertices = DiskRangeIndex(self.P)
        self._counter = itertools.count()

    # -- helpers --------------------------------------------------------------

    def _range(self, r) -> RangeRef:
        r = RangeRef(*r) if not isinstance(r, RangeRef) else r
        if not (0 <= r.lo <= r.hi < self.n):
            raise ValueError(f"invalid range [{r.lo}, {r.hi}] for curve of {self.n} vertices")
        return r

    def full_range(self) -> RangeRef:
        return RangeRef(0, self.n - 1)

    # -- k = 1 ------------------------------------------------------------------

    def query_k1(self, rng, a: Point, stats: QueryStats | None = None) -> float:
        r = self._range(rng)
        return self.tree.dmax(r.lo, r.hi, a, stats)

    # -- k = 2 ------------------------------------------------------------------

    def decide_k2(self, rng, a: Point, b: Point, d: float, stats: QueryStats | None = None) -> bool:
        r = self._range(rng)
        return self._decide2(r.lo, r.hi, a, b, d, stats)

    def _decide2(self, lo, hi, a, b, d, stats) -> bool:
        P = self.P
        if dist(P[lo], a) > d or dist(P[hi], b) > d:
            return False
        i = self.tree.prefix(lo, hi, a, d, stats)
        j = self.tree.suffix(lo, hi, b, d, stats)
        return i >= j - 1

    def query_k2(self, rng, a: Point, b: Point, stats: QueryStats | None = None) -> float:
        r = self._range(rng)
        return self._query2(r.lo, r.hi, a, b, stats)

    def _query2(self, lo, hi, a, b, stats) -> float:
        if lo == hi:
            p = self.P[lo]
            return max(dist(p, a), dist(p, b))
        t = self.tree

        def cost(s):  # a takes [lo, s], b takes [s+1, hi]
            return max(t.dmax(lo, s, a, stats), t.dmax(s + 1, hi, b, stats))

        # first split where the prefix side reaches the suffix side
        left, right = lo, hi - 1
        while left < right:
            s = (left + right) // 2
            if t.dmax(lo, s, a, stats) >= t.dmax(s + 1, hi, b, stats):
                right = s
            else:
                left = s + 1
        best = cost(left)
        if left > lo:
            best = min(best, cost(left - 1))
        return best

    # -- k = 3 ------------------------------------------------------------------

    def feasibility_k3(self, rng, a: Point, b: Point, c: Point, d: float,
                       stats: QueryStats | None = None) -> FeasibilityOutcome:
        r = self._range(rng)
        return self._feasible3(r.lo, r.hi, a, b, c, d, stats)

    def _feasible3(self, lo, hi, a, b, c, d, stats) -> FeasibilityOutcome:
        P, t = self.P, self.tree
        if dist(P[lo], a) > d or dist(P[hi], c) > d:
            return FeasibilityOutcome(False, None, None)
        i = t.prefix(lo, hi, a, d, stats)
        j = t.suffix(lo, hi, c, d, stats)
        return FeasibilityOutcome(self._middle_cost(lo, hi, i, j, b, stats) <= d, i, j)

    def _middle_cost(self, lo, hi, i, j, b, stats) -> float:
        """Cost of matching b between a prefix ending at ``i`` and a suffix starting at ``j``."""
        if j > i + 1:
            return self.tree.dmax(i + 1, j - 1, b, stats)
        # b sits on a single vertex, reachable from p_i by a diagonal step
        # and leaving to p_j by one
        return self.tree.dmin(max(lo, j - 1), min(hi, i + 1), b, stats)

    def _decide3(self, lo, hi, a, b, c, d, stats) -> bool:
        return self._feasible3(lo, hi, a, b, c, d, stats).feasible

    def query_k3(self, rng, a: Point, b: Point, c: Point, stats: QueryStats | None = None) -> float:
        r = self._range(rng)
        return self._query3(r.lo, r.hi, a, b, c, stats)

    def _query3(self, lo, hi, a, b, c, stats) -> float:
        P = self.P
        delta = max(dist(P[lo], a), dist(P[hi], c))
        if self._decide3(lo, hi, a, b, c, delta, stats):
            return delta
        d1 = self._one_side(lo, hi, a, b, c, delta, stats, forward=True)
        d2 = self._one_side(lo, hi, a, b, c, delta, stats, forward=False)
        return min(d1, d2)

    def _one_side(self, lo, hi, a, b, c, delta, stats, forward: bool) -> float:
        """Smallest feasible running maximum from one end, refined by the
        b-cost at the largest infeasible running maximum below it."""
        t = self.tree
        if forward:
            run = lambda k: t.dmax(lo, k, a, stats)  # noqa: E731
            end, last = lo, hi
        else:
            run = lambda k: t.dmax(hi - k + lo, hi, c, stats)  # noqa: E731
            end, last = lo, hi
        # running maxima are nondecreasing in k; feasibility is monotone
        left, right = end, last
        if self._decide3(lo, hi, a, b, c, run(last), stats):
            while left < right:
                k = (left + right) // 2
                if self._decide3(lo, hi, a, b, c, run(k), stats):
                    right = k
                else:
                    left = k + 1
            d_best = run(left)
            below = _below(d_best)
            if forward:
                cut = t.prefix(lo, hi, a, below, stats)
            else:
                cut = t.suffix(lo, hi, c, below, stats)
            if cut is None:
                return d_best
            d_bar = t.dmax(lo, cut, a, stats) if forward else t.dmax(cut, hi, c, stats)
        else:
            # no running maximum is feasible: b alone sets the answer
            d_best = math.inf
            d_bar = run(last)
        if d_bar < delta:
            return d_best
        i = t.prefix(lo, hi, a, d_bar, stats)
        j = t.suffix(lo, hi, c, d_bar, stats)
        return min(d_best, self._middle_cost(lo, hi, i, j, b, stats))

    # -- k = 4 ------------------------------------------------------------------

    def decide_k4(self, rng, a: Point, b: Point, c: Point, d: Point, R: float,
                  stats: QueryStats | None = None) -> bool:
        r = self._range(rng)
        return self._decide4(r.lo, r.hi, a, b, c, d, R, stats)

    def _decide4(self, lo, hi, a, b, c, d, R, stats) -> bool:
        P, t = self.P, self.tree
        if stats is not None:
            stats.decisions += 1
        if dist(P[lo], a) > R or dist(P[hi], d) > R:
            return False
        i = t.prefix(lo, hi, a, R, stats)
        j = t.suffix(lo, hi, d, R, stats)
        if i < hi and self._decide3(i + 1, hi, b, c, d, R, stats):
            return True
        if j > lo and self._decide3(lo, j - 1, a, b, c, R, stats):
            return True
        if j > i:
            return j == i + 1 and dist(P[i], b) <= R and dist(P[j], c) <= R
        # j <= i: b hands over to c at some vertex or edge between them
        if self.edges.edge_pair_exists(j, i, b, c, R, stats):
            return True
        if j > lo and dist(P[j - 1], b) <= R and dist(P[j], c) <= R:
            return True
        if i < hi and dist(P[i], b) <= R and dist(P[i + 1], c) <= R:
            return True
        return dist(P[i], b) <= R and dist(P[i], c) <= R

    def query_k4(self, rng, a: Point, b: Point, c: Point, d: Point,
                 stats: QueryStats | None = None, seed: int | None = None) -> float:
        r = self._range(rng)
        lo, hi = r.lo, r.hi
        P, t = self.P, self.tree
        Q = (a, b, c, d)
        delta = max(dist(P[lo], a), dist(P[hi], d))
        decide = lambda R: self._decide4(lo, hi, a, b, c, d, R, stats)  # noqa: E731
        if decide(delta):
            return delta
        top = max(t.dmax(lo, hi, q, stats) for q in Q)
        if seed is None:
            seed = next(self._counter)
        gen = np.random.default_rng([self.seed, seed])
        m = hi - lo + 1
        size = max(1, math.isqrt(4 * m))
        ks = gen.integers(lo, hi + 1, size=size).tolist()
        qs = gen.integers(0, 4, size=size).tolist()
        sample = sorted({x for x in (dist(P[k], Q[w]) for k, w in zip(ks, qs)) if delta < x < top})
        sample.append(top)
        # smallest sampled value that is feasible; the answer lies in (low, high]
        left, right = 0, len(sample) - 1
        while left < right:
            mid = (left + right) // 2
            if decide(sample[mid]):
                right = mid
            else:
                left = mid + 1
        high = sample[left]
        low = sample[left - 1] if left else delta
        cands = set()
        for q in Q:
            for k, p in self.vertices.annulus_report(Annulus(q, low, high), stats):
                if lo <= k <= hi:
                    x = dist(p, q)
                    if low < x <= high:
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

    # -- dispatch ---------------------------------------------------------------

    def query(self, rng, Q: Sequence[Point], stats: QueryStats | None = None) -> float:
        """Distance between ``P[rng]`` and ``Q``; a reversed range is walked from ``hi``."""
        Q = [as_point(q) for q in Q]
        if not Q:
            raise ValueError("empty curve")
        if len(Q) > MAX_QUERY:
            raise ValueError("query size unsupported")
        r = self._range(rng)
        if r.reversed:
            Q.reverse()
            r = RangeRef(r.lo, r.hi)
        if len(Q) == 1:
            return self.query_k1(r, Q[0], stats)
        if len(Q) == 2:
            return self.query_k2(r, *Q, stats=stats)
        if len(Q) == 3:
            return self.query_k3(r, *Q, stats=stats)
        return self.query_k4(r, *Q, stats=stats)

    def decide(self, rng, Q: Sequence[Point], R: float, stats: QueryStats | None = None) -> bool:
        """Is the distance between ``P[rng]`` and ``Q`` at most ``R``?"""
        Q = [as_point(q) for q in Q]
        if not Q:
            raise ValueError("empty curve")
        if len(Q) > MAX_QUERY:
            raise ValueError("query size unsupported")
        r = self._range(rng)
        if r.reversed:
            Q.reverse()
        lo, hi = r.lo, r.hi
        if len(Q) == 1:
            return self.tree.dmax(lo, hi, Q[0], stats) <= R
        if len(Q) == 2:
            return self._decide2(lo, hi, *Q, R, stats)
        if len(Q) == 3:
            return self._decide3(lo, hi, *Q, R, stats)
        return self._decide4(lo, hi, *Q, R, stats)


def build(P: Sequence[Point], seed: int = 0) -> CurveOracle:
    return CurveOracle(P, seed)
