import doctest
import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import dfdoracle.reference as reference
from dfdoracle.geometry import GeometricGraph, dist
from dfdoracle.reference import (ddf, ddf_decision, ddf_graph, ddf_graph_decision, ddf_table,
                                 distance_candidates, optimal_walk, tree_path, walk_cost)
from oracles import ddf_by_walks, graph_ddf_by_paths

small = st.floats(-10, 10, allow_nan=False).map(lambda x: round(x, 1))
curve = st.lists(st.tuples(small, small), min_size=1, max_size=5)


def test_doctests():
    assert doctest.testmod(reference).failed == 0


def test_examples():
    # one vertex against many: the farthest one
    assert ddf([(0, 0)], [(1, 0), (3, 4), (0, 2)]) == 5
    assert ddf([(0, 0), (1, 0)], [(0, 0), (1, 0)]) == 0
    # crossing order forces a large pair
    assert ddf([(0, 0), (10, 0)], [(10, 0), (0, 0)]) == 10
    # [DERIVED] by walk enumeration
    A = [(0, 0), (1, 1), (2, 0), (3, 1)]
    B = [(0, 0.5), (2, 0.5), (3, 0.5)]
    assert ddf(A, B) == pytest.approx(ddf_by_walks(A, B), abs=1e-12)
    assert ddf(A, B) == pytest.approx(math.sqrt(1.25))
    with pytest.raises(ValueError, match="empty curve"):
        ddf([], [(0, 0)])


@given(curve, curve)
def test_dp_matches_walk_enumeration(A, B):
    assert math.isclose(ddf(A, B), ddf_by_walks(A, B), rel_tol=1e-12, abs_tol=1e-12)


@given(curve, curve)
def test_symmetry_and_reversal(A, B):
    d = ddf(A, B)
    assert ddf(B, A) == d
    assert ddf(A[::-1], B[::-1]) == d
    assert max(dist(A[0], B[0]), dist(A[-1], B[-1])) <= d


@given(curve, curve)
def test_optimal_walk_and_decision(A, B):
    d = ddf(A, B)
    w = optimal_walk(A, B)
    assert walk_cost(A, B, w) == d
    assert ddf_decision(A, B, d)
    for r in distance_candidates(A, B):
        assert ddf_decision(A, B, r) == (r >= d)
    assert not ddf_decision(A, B, math.nextafter(d, -1)) or d == 0


def test_table_prefixes():
    A = [(0, 0), (2, 0), (4, 1)]
    B = [(0, 1), (4, 0)]
    T = ddf_table(A, B)
    for i in range(3):
        for j in range(2):
            assert T[i][j] == ddf(A[: i + 1], B[: j + 1])


def test_walk_cost_rejects_illegal_walks():
    A = B = [(0, 0), (1, 0)]
    with pytest.raises(ValueError):
        walk_cost(A, B, [(0, 0), (1, 0)])
    with pytest.raises(ValueError):
        walk_cost(A, B, [(0, 0), (0, 1), (0, 0), (1, 1)])


def _random_graph(rng, n, m):
    pts = [(rng.randint(0, 6), rng.randint(0, 6)) for _ in range(n)]
    edges = set()
    for v in range(1, n):
        edges.add((rng.randrange(v), v))
    while len(edges) < min(m, n * (n - 1) // 2):
        i, j = sorted(rng.sample(range(n), 2))
        edges.add((i, j))
    return GeometricGraph.build(pts, sorted(edges))


def test_tree_path():
    T = GeometricGraph.build([(0, 0)] * 5, [(0, 1), (1, 2), (1, 3), (3, 4)])
    assert tree_path(T, 2, 4) == [2, 1, 3, 4]
    assert tree_path(T, 4, 4) == [4]
    G = GeometricGraph.build([(0, 0)] * 3, [(0, 1)])
    with pytest.raises(ValueError, match="no path"):
        tree_path(G, 0, 2)
    with pytest.raises(ValueError, match="no path"):
        ddf_graph(G, 0, 2, [(0, 0)])


def test_graph_reference_matches_path_enumeration():
    rng = random.Random(5)
    for _ in range(150):
        n = rng.randint(1, 7)
        G = _random_graph(rng, n, rng.randint(n - 1, n + 4))
        u, v = rng.randrange(n), rng.randrange(n)
        Q = [(rng.uniform(0, 6), rng.uniform(0, 6)) for _ in range(rng.randint(1, 4))]
        want = graph_ddf_by_paths(G.points, G.adjacency, u, v, Q)
        got = ddf_graph(G, u, v, Q)
        assert math.isclose(got, want, rel_tol=1e-12, abs_tol=1e-12)
        assert ddf_graph_decision(G, u, v, Q, got)


def test_walks_differ_from_paths_for_three_points():
    # star: center 0 with a far spike 3; the path 1-0-2 never visits 3
    G = GeometricGraph.build([(0, 0), (-1, 0), (1, 0), (0, 5)], [(0, 1), (0, 2), (0, 3)])
    Q = [(-1, 0), (0, 5), (1, 0)]
    # [DERIVED] only path is 1,0,2; Q[1] must pair with one of them
    assert ddf_graph(G, 1, 2, Q) == pytest.approx(graph_ddf_by_paths(G.points, G.adjacency, 1, 2, Q))
    assert ddf_graph(G, 1, 2, Q) == 5
