"""Run workload records against fast oracles and against the brute-force references."""

from __future__ import annotations

from .curve_oracle import MAX_QUERY, CurveOracle
from .formats import FormatError, Instance, WorkloadRecord
from .graph_oracle import LocalGraphOracle, SegmentQuery
from .range_tree import RangeRef
from .reference import ddf, ddf_decision, ddf_graph, ddf_graph_decision, tree_path
from .stats import QueryStats
from .tree_oracle import TreeOracle

RECORD_KIND = {"curve": "C", "tree": "T", "graph": "G"}
VERIFY_LIMIT = {"curve": 4096, "tree": 4096, "graph": 512}


def build_oracle(inst: Instance, seed: int = 0):
    if inst.kind == "curve":
        return CurveOracle(inst.points, seed)
    if inst.kind == "tree":
        return TreeOracle(inst.graph(), seed)
    return LocalGraphOracle(inst.graph(), inst.t, seed)


def check_record(inst: Instance, rec: WorkloadRecord) -> None:
    """Raise :class:`FormatError` if the record does not fit the instance."""
    n = len(inst.points)
    if rec.kind != RECORD_KIND[inst.kind]:
        raise FormatError(f"record kind {rec.kind} does not match a {inst.kind} instance", rec.line)
    if len(rec.points) > MAX_QUERY:
        raise FormatError("query size unsupported", rec.line)
    if rec.kind == "C":
        if not (1 <= rec.i <= rec.j <= n):
            raise FormatError(f"bad range [{rec.i}, {rec.j}]", rec.line)
    elif not (0 <= rec.i < n and 0 <= rec.j < n):
        raise FormatError(f"vertex out of range in ({rec.i}, {rec.j})", rec.line)


def answer(oracle, rec: WorkloadRecord, stats: QueryStats | None = None):
    if rec.kind == "C":
        rng = RangeRef(rec.i - 1, rec.j - 1)
        if rec.is_decision:
            return oracle.decide(rng, rec.points, rec.r, stats)
        return oracle.query(rng, rec.points, stats)
    if rec.kind == "T":
        d = oracle.query(rec.i, rec.j, rec.points, stats)
        return d <= rec.r if rec.is_decision else d
    q = SegmentQuery(rec.i, rec.j, rec.points[0], rec.points[1])
    if rec.is_decision:
        return oracle.decide_segment(q, rec.r, stats)
    return oracle.query_segment(q, stats)


def reference_answer(inst: Instance, rec: WorkloadRecord, r: float | None = None):
    """Brute-force answer; ``r`` overrides the record's threshold."""
    r = rec.r if r is None else r
    if rec.kind == "C":
        sub = inst.points[rec.i - 1: rec.j]
        return ddf(sub, rec.points) if r is None else ddf_decision(sub, rec.points, r)
    G = inst.graph()
    if rec.kind == "T":
        path = [inst.points[w] for w in tree_path(G, rec.i, rec.j)]
        return ddf(path, rec.points) if r is None else ddf_decision(path, rec.points, r)
    if r is None:
        return ddf_graph(G, rec.i, rec.j, rec.points)
    return ddf_graph_decision(G, rec.i, rec.j, rec.points, r)


def agrees(inst: Instance, rec: WorkloadRecord, fast) -> bool:
    """Does a fast answer agree with the reference?

    Curves, trees and 1-local graphs must match exactly. For graphs declared
    t-local with t > 1 the fast value ``r`` is only a bound: the reference
    ``d*`` must satisfy ``r <= d*``, and, when the segment runs from the
    point of u to the point of v, ``d* <= (t+1) r / 2``.
    """
    if rec.kind != "G" or inst.t == 1:
        return fast == reference_answer(inst, rec)
    t = inst.t
    anchored = rec.points[0] == inst.points[rec.i] and rec.points[1] == inst.points[rec.j]
    if rec.is_decision:
        ref = reference_answer(inst, rec)
        if ref and not fast:
            return False
        if fast and anchored:
            return bool(reference_answer(inst, rec, (t + 1) * rec.r / 2))
        return True
    ref = reference_answer(inst, rec)
    tol = 1e-9 * max(1.0, abs(ref))
    if fast > ref + tol:
        return False
    return not anchored or ref <= (t + 1) * fast / 2 + tol
