import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dfdoracle.curve_oracle import CurveOracle, FeasibilityOutcome, build
from dfdoracle.geometry import dist
from dfdoracle.range_tree import RangeRef
from dfdoracle.reference import ddf, ddf_decision
from dfdoracle.stats import QueryStats
from oracles import ddf_by_walks


def _grid(rng, k, grid=5):
    return [tuple(p) for p in (rng.integers(0, grid, size=(k, 2)) / grid).tolist()]


def test_k1_example():
    o = build([(0, 0), (3, 0), (1, 0)])
    assert o.query(RangeRef(0, 2), [(0, 0)]) == 3
    assert o.query(RangeRef(2, 2), [(0, 0)]) == 1


def test_k2_example():
    # [DERIVED] by walk enumeration: split after vertex 1 costs 1
    P = [(0, 0), (1, 0), (3, 0), (4, 0)]
    o = build(P)
    Q = [(0.5, 0), (3.5, 0)]
    assert o.query(o.full_range(), Q) == 0.5
    assert o.query(o.full_range(), Q) == ddf_by_walks(P, Q)
    assert o.decide_k2(o.full_range(), *Q, 0.5)
    assert not o.decide_k2(o.full_range(), *Q, 0.49)


def test_middle_vertex_beyond_prefix_is_usable():
    # b must sit on p3 although the a-prefix already covers p1, p2 and the
    # c-suffix starts at p2; the walk (a,p1)(a,p2)(b,p3)(c,p3) costs 0.5
    o = build([(0, 0), (1, 0), (2, 0)])
    a, b, c = (0.5, 0), (2, 0), (1.5, 0)
    out = o.feasibility_k3(o.full_range(), a, b, c, 0.5)
    assert out == FeasibilityOutcome(True, 1, 1)
    assert ddf_decision(o.P, [a, b, c], 0.5)
    assert o.query(o.full_range(), [a, b, c]) == ddf(o.P, [a, b, c]) == 0.5


def test_k3_answer_set_by_middle_point():
    # b is far from everything, so no prefix or suffix maximum bounds the answer
    P = [(0, 0), (1, 0), (2, 0)]
    o = build(P)
    Q = [(0, 0), (1, 10), (2, 0)]
    assert o.query(o.full_range(), Q) == ddf(P, Q) == 10


def test_k4_handover_inside_overlap():
    # a-prefix and d-suffix overlap on the whole curve; b and c take p1, p2
    P = [(0, 0), (1, 0), (2, 0), (3, 0)]
    o = build(P)
    Q = [(1.5, 0), (1, 0.5), (2, 0.5), (1.5, 0)]
    assert o.decide_k4(o.full_range(), *Q, 1.5)
    assert o.query(o.full_range(), Q) == ddf(P, Q) == 1.5
    # swap b and c: the handover pair no longer exists in order
    Q2 = [(1.5, 0), (2, 0.5), (1, 0.5), (1.5, 0)]
    assert o.query(o.full_range(), Q2) == ddf(P, Q2)
    rng = np.random.default_rng(4)
    for _ in range(200):
        Pp = [tuple(x) for x in (np.array(P) + rng.normal(0, 0.2, (4, 2))).tolist()]
        Qp = [tuple(x) for x in (np.array(Q) + rng.normal(0, 0.2, (4, 2))).tolist()]
        op = build(Pp)
        assert op.query(op.full_range(), Qp) == ddf(Pp, Qp)


def test_delta_answer_skips_annulus(monkeypatch):
    o = build([(0, 0), (1, 0), (2, 0), (3, 0)])

    def boom(*args, **kwargs):
        raise AssertionError("annulus extraction not expected")

    monkeypatch.setattr(o.vertices, "annulus_report", boom)
    Q = [(0, 1), (1, 0), (2, 0), (3, 1)]
    assert o.query(o.full_range(), Q) == 1


def test_reversed_range():
    P = [(0, 0), (1, 0), (2, 0), (5, 1), (3, 3)]
    o = build(P)
    Q = [(3, 3), (2, 0), (0, 0)]
    assert o.query(RangeRef(0, 4, True), Q) == ddf(P[::-1], Q)
    assert o.query(RangeRef(1, 3, True), Q[:2]) == ddf(P[3:0:-1], Q[:2])
    assert o.decide(RangeRef(0, 4, True), Q, ddf(P[::-1], Q))


def test_errors():
    o = build([(0, 0), (1, 0)])
    with pytest.raises(ValueError, match="query size unsupported"):
        o.query(o.full_range(), [(0, 0)] * 5)
    with pytest.raises(ValueError, match="empty curve"):
        o.query(o.full_range(), [])
    with pytest.raises(ValueError, match="invalid range"):
        o.query(RangeRef(1, 0), [(0, 0)])
    with pytest.raises(ValueError, match="invalid range"):
        o.decide(RangeRef(0, 2), [(0, 0)], 1.0)
    with pytest.raises(ValueError, match="empty curve"):
        build([])


@given(st.integers(1, 24), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_matches_reference_on_grids(n, k, seed):
    rng = np.random.default_rng(seed)
    P = _grid(rng, n)
    o = CurveOracle(P, seed=seed % 7)
    lo = int(rng.integers(0, n))
    hi = int(rng.integers(lo, n))
    Q = _grid(rng, k)
    want = ddf(P[lo: hi + 1], Q)
    assert o.query(RangeRef(lo, hi), Q) == want
    assert o.decide(RangeRef(lo, hi), Q, want)
    assert not o.decide(RangeRef(lo, hi), Q, math.nextafter(want, -1))


def test_decisions_match_reference_over_all_thresholds():
    rng = np.random.default_rng(12)
    for _ in range(40):
        n = int(rng.integers(1, 12))
        P = [tuple(p) for p in rng.random((n, 2)).tolist()]
        o = CurveOracle(P)
        for k in (2, 3, 4):
            Q = [tuple(p) for p in rng.random((k, 2)).tolist()]
            for r in sorted({dist(p, q) for p in P for q in Q}):
                assert o.decide(o.full_range(), Q, r) == ddf_decision(P, Q, r)


def test_query_k4_seed_independent_answer():
    rng = random.Random(3)
    P = [(rng.random(), rng.random()) for _ in range(200)]
    o = CurveOracle(P, seed=1)
    Q = [(rng.random(), rng.random()) for _ in range(4)]
    want = ddf(P, Q)
    for s in range(5):
        assert o.query_k4(o.full_range(), *Q, seed=s) == want


def test_stats_are_counted():
    rng = random.Random(8)
    P = [(rng.random(), rng.random()) for _ in range(500)]
    o = CurveOracle(P)
    st_ = QueryStats()
    o.query(o.full_range(), [(0.1, 0.1), (0.9, 0.9), (0.1, 0.9), (0.5, 0.5)], st_)
    assert st_.touches > 0 and st_.decisions >= 1
    assert st_.as_dict()["touches"] == st_.touches
