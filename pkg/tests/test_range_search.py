import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dfdoracle.geometry import Annulus, Disk, GeometricGraph, delaunay, dist
from dfdoracle.range_search import DiskRangeIndex, EdgePairIndex, NeighborAugmentedIndex, _SegmentLevels
from dfdoracle.stats import QueryStats


def _grid_points(rng, n, grid=6):
    return [tuple(p) for p in (rng.integers(0, grid, size=(n, 2)) / grid).tolist()]


def test_disk_example():
    idx = DiskRangeIndex([(0, 0), (1, 0), (2, 0), (0, 1)])
    nodes, single = idx.disk_canonical(Disk((0, 0), 1))
    got = sorted([i for v in nodes for i in idx.subset(v)] + single)
    assert got == [0, 1, 3]
    assert idx.annulus_report(Annulus((0, 0), 1, 2)) == [(1, (1, 0)), (2, (2, 0)), (3, (0, 1))]
    assert idx.annulus_report(Annulus((0, 0), 0.5, 0.9)) == []


@given(st.integers(1, 200), st.integers(0, 2**32 - 1))
def test_disk_and_annulus_exact(n, seed):
    rng = np.random.default_rng(seed)
    P = _grid_points(rng, n)
    idx = DiskRangeIndex(P)
    c = tuple((rng.integers(0, 6, size=2) / 6).tolist())
    ds = [dist(p, c) for p in P]
    r = float(rng.choice(ds))
    stats = QueryStats()
    nodes, single = idx.disk_canonical(Disk(c, r), stats)
    got = [i for v in nodes for i in idx.subset(v)] + single
    assert len(got) == len(set(got))
    assert sorted(got) == [i for i, d in enumerate(ds) if d <= r]
    r0 = float(rng.choice(ds))
    lo, hi = min(r0, r), max(r0, r)
    assert [i for i, _ in idx.annulus_report(Annulus(c, lo, hi))] == [
        i for i, d in enumerate(ds) if lo <= d <= hi]


def test_segment_levels_cover():
    S = _SegmentLevels(11)
    for lo in range(11):
        for hi in range(lo, 11):
            spans = [(S.lo[v], S.hi[v]) for v in S.canonical(lo, hi)]
            assert [i for a, b in spans for i in range(a, b + 1)] == list(range(lo, hi + 1))


def _pair_scan(P, lo, hi, b, c, R):
    return any(dist(P[k], b) <= R and (dist(P[k + 1], c) <= R or dist(P[k], c) <= R)
               for k in range(lo, hi))


def test_edge_pair_examples():
    P = [(0, 0), (1, 0), (2, 0), (3, 0)]
    E = EdgePairIndex(P)
    assert E.edge_pair_exists(0, 3, (1, 0), (2, 0), 0)
    assert not E.edge_pair_exists(0, 3, (2, 0), (1, 0), 0)
    # a single vertex near both points also counts
    assert E.edge_pair_exists(0, 3, (1, 0.1), (1, -0.1), 0.1)
    # the last vertex of the range is never a first endpoint
    assert not E.edge_pair_exists(0, 3, (3, 0), (3, 0), 0)
    assert not E.edge_pair_exists(2, 2, (2, 0), (2, 0), 1)
    with pytest.raises(ValueError, match="invalid range"):
        E.edge_pair_exists(2, 1, (0, 0), (0, 0), 1)
    assert not EdgePairIndex([(0, 0)]).edge_pair_exists(0, 0, (0, 0), (0, 0), 1)


@given(st.integers(1, 150), st.integers(0, 2**32 - 1))
def test_edge_pair_matches_scan(n, seed):
    rng = np.random.default_rng(seed)
    P = _grid_points(rng, n)
    E = EdgePairIndex(P)
    for _ in range(8):
        lo = int(rng.integers(0, n))
        hi = int(rng.integers(lo, n))
        b, c = (tuple((rng.integers(0, 6, size=2) / 6).tolist()) for _ in range(2))
        R = float(rng.choice([dist(p, b) for p in P] + [dist(p, c) for p in P]))
        assert E.edge_pair_exists(lo, hi, b, c, R) == _pair_scan(P, lo, hi, b, c, R)


def _neighbor_scan(G, D, target):
    inside = [w for w in range(G.n) if dist(G.points[w], D.center) <= D.radius]
    if not inside:
        return None
    cand = set(inside)
    for w in inside:
        cand.update(G.adjacency[w])
    return min(dist(G.points[w], target) for w in cand)


@given(st.integers(3, 120), st.integers(0, 2**32 - 1))
def test_neighbor_disk_min_matches_scan(n, seed):
    rng = np.random.default_rng(seed)
    pts = [tuple(p) for p in rng.random((n, 2)).tolist()]
    G = delaunay(pts)
    idx = NeighborAugmentedIndex(G)
    for _ in range(8):
        c, t = (tuple(rng.random(2).tolist()) for _ in range(2))
        D = Disk(c, float(rng.random() * 0.5))
        want = _neighbor_scan(G, D, t)
        assert idx.neighbor_disk_min(D, t) == want
        if want is not None:
            early = idx.neighbor_disk_min(D, t, stop_at=want)
            assert early is not None and early <= want


def test_neighbor_index_example_and_storage():
    G = GeometricGraph.build([(0, 0), (1, 0), (5, 0)], [(0, 1), (1, 2)])
    idx = NeighborAugmentedIndex(G)
    # disk holds only vertex 0; its neighbor 1 is the closest candidate to (5, 0)
    assert idx.neighbor_disk_min(Disk((0, 0), 0.5), (5, 0)) == 4
    assert idx.neighbor_disk_min(Disk((9, 9), 0.5), (5, 0)) is None
    pts = [tuple(p) for p in np.random.default_rng(0).random((1024, 2)).tolist()]
    big = NeighborAugmentedIndex(delaunay(pts))
    # each level stores every vertex plus its neighbors at most once
    assert big.stored_points <= 7 * 1024 * (math.log2(1024) + 1)
