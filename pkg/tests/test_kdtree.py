import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from dfdoracle.kdtree import LEAF_SIZE, KDForest
from dfdoracle.stats import QueryStats


def _forest(pts, groups):
    a = np.array(pts, dtype=float)
    return KDForest(a[:, 0], a[:, 1], groups)


def _brute(pts, q):
    a = np.array(pts, dtype=float)
    dx = a[:, 0] - q[0]
    dy = a[:, 1] - q[1]
    return np.sqrt(dx * dx + dy * dy)


def test_structure_is_contiguous_and_balanced():
    rng = np.random.default_rng(1)
    pts = rng.random((300, 2))
    f = _forest(pts, [(0, 99), (100, 100), (101, 299)])
    assert len(f.roots) == 3
    for root, (lo, hi) in zip(f.roots, [(0, 99), (100, 100), (101, 299)]):
        assert sorted(f.ids[f.start[root]: f.end[root]].tolist()) == list(range(lo, hi + 1))
    for n in range(f.node_count):
        if f.left[n] < 0:
            assert f.size(n) <= LEAF_SIZE
        else:
            l, r = f.left[n], f.right[n]
            assert f.start[l] == f.start[n] and f.end[l] == f.start[r] and f.end[r] == f.end[n]
            assert f.size(l) - f.size(r) in (0, 1)
            s, e = f.start[n], f.end[n]
            assert f.x0[n] == f.px[s:e].min() and f.y1[n] == f.py[s:e].max()


@given(st.integers(1, 120), st.integers(0, 10_000))
def test_nearest_farthest_disk_annulus(n, seed):
    rng = np.random.default_rng(seed)
    pts = rng.random((n, 2))
    # snap some coordinates so ties and boundary hits occur
    pts[: n // 2] = np.round(pts[: n // 2] * 4) / 4
    f = _forest(pts, [(0, n - 1)])
    q = tuple(np.round(rng.random(2) * 4) / 4)
    d = _brute(pts, q)
    dn, pos = f.nearest(0, *q)
    assert dn == d.min() and d[f.ids[pos]] == dn
    dfar, pos = f.farthest(0, *q)
    assert dfar == d.max() and d[f.ids[pos]] == dfar
    r = float(rng.choice(d))
    st_ = QueryStats()
    nodes, positions = f.disk_canonical(0, *q, r, st_)
    got = [i for nd in nodes for i in f.ids[f.start[nd]: f.end[nd]].tolist()] + f.ids[positions].tolist()
    assert len(got) == len(set(got))
    assert sorted(got) == np.flatnonzero(d <= r).tolist()
    assert st_.canonical == len(nodes)
    r1 = float(rng.choice(d))
    r1, r2 = min(r1, r), max(r1, r)
    ann = f.ids[f.annulus(0, *q, r1, r2)].tolist()
    assert sorted(ann) == np.flatnonzero((d >= r1) & (d <= r2)).tolist()


def test_extra_boxes_cover_extra_coordinates():
    rng = np.random.default_rng(3)
    a, b = rng.random((50, 2)), rng.random((50, 2))
    f = KDForest(a[:, 0], a[:, 1], [(0, 49)], extra=(b[:, 0], b[:, 1]))
    for n in range(f.node_count):
        s, e = f.start[n], f.end[n]
        assert f.ex0[n] == f.ex[s:e].min() and f.ey1[n] == f.ey[s:e].max()
        q = (0.3, 0.7)
        dd = f.slice_dists(s, e, *q, extra=True)
        assert f.extra_box_min(n, *q) <= dd.min() and dd.max() <= f.extra_box_max(n, *q)
