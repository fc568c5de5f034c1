"""Structure-touch scaling measurements.

Wall-clock constants depend on the machine; the number of structure pieces
a query touches (range-tree nodes, canonical kd subsets, crossing kd
leaves) does not, so scaling is judged on touches.
"""

from __future__ import annotations

import time
from typing import Sequence

import numpy as np

from .curve_oracle import CurveOracle
from .graph_oracle import LocalGraphOracle, SegmentQuery
from .instances import random_curve, random_delaunay
from .stats import QueryStats

DEFAULT_SIZES = tuple(2 ** e for e in range(10, 17))


def fit_exponent(ns: Sequence[float], values: Sequence[float]) -> float:
    """Slope of the least-squares line through ``(log n, log value)``."""
    return float(np.polyfit(np.log(ns), np.log(values), 1)[0])


def _points(rng, k):
    return [tuple(p) for p in rng.random((k, 2)).tolist()]


def measure(n: int, queries: int = 50, seed: int = 0, graph: bool = True, curve=None) -> dict:
    """One table row for size ``n``.

    ``k4_touches``: mean touches of a 4-vertex decision at the exact answer.
    ``small_touches``: mean touches of 1- to 3-vertex optimization queries.
    ``segment_touches``: mean touches of a graph segment decision at the
    exact answer on a random Delaunay triangulation.
    """
    t0 = time.perf_counter()
    P = random_curve(n, seed) if curve is None else curve
    n = len(P)
    oracle = CurveOracle(P, seed)
    rng = np.random.default_rng([seed, n])
    full = oracle.full_range()
    k4 = []
    small = []
    for s in range(queries):
        Q = _points(rng, 4)
        R = oracle.query_k4(full, *Q, seed=s)
        st = QueryStats()
        oracle.decide_k4(full, *Q, R, st)
        k4.append(st.touches)
        k = 1 + s % 3
        st = QueryStats()
        oracle.query(full, _points(rng, k), st)
        small.append(st.touches)
    row = {
        "n": n,
        "k4_touches": float(np.mean(k4)),
        "small_touches": float(np.mean(small)),
    }
    if graph:
        g = LocalGraphOracle(random_delaunay(n, seed), 1.0, seed)
        seg = []
        for s in range(queries):
            u, v = rng.integers(0, n, size=2).tolist()
            q = SegmentQuery(u, v)
            r = g.query_segment(q, seed=s)
            st = QueryStats()
            g.decide_segment(q, r, st)
            seg.append(st.touches)
        row["segment_touches"] = float(np.mean(seg))
    row["seconds"] = time.perf_counter() - t0
    return row


def run(sizes: Sequence[int] = DEFAULT_SIZES, queries: int = 50, seed: int = 0,
        graph: bool = True) -> tuple[list[dict], dict]:
    """Rows per size plus fitted exponents (empty when fewer than two sizes)."""
    rows = [measure(n, queries, seed, graph) for n in sizes]
    fits = {}
    if len(rows) >= 2:
        ns = [r["n"] for r in rows]
        for key in ("k4_touches", "small_touches", "segment_touches"):
            if key in rows[0]:
                fits[key] = fit_exponent(ns, [max(r[key], 1e-12) for r in rows])
    return rows, fits


def format_table(rows: list[dict], fits: dict) -> str:
    keys = [k for k in ("n", "k4_touches", "small_touches", "segment_touches", "seconds") if k in rows[0]]
    lines = ["  ".join(f"{k:>15}" for k in keys)]
    for r in rows:
        lines.append("  ".join(f"{r[k]:>15}" if k == "n" else f"{r[k]:>15.3f}" for k in keys))
    for k, e in fits.items():
        lines.append(f"exponent {k}: {e:.3f}")
    return "\n".join(lines)
