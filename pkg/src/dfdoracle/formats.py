"""Text formats for curves, trees, graphs and query workloads.

Every file is UTF-8 text; blank lines and lines starting with ``#`` are
ignored. Floats are written with ``repr`` so a parse/serialize round trip
reproduces the file byte for byte.

Instance headers: ``curve n``, ``tree n`` or ``graph n m t``, followed by
``n`` lines ``x y`` and then (trees, graphs) edge lines ``i j`` with 0-based
vertex indices.

Workload records, one per line (a trailing ``r`` makes a decision record):

    C lo hi k x1 y1 ... xk yk [r]    curve range, 1-based inclusive
    T u v k x1 y1 ... xk yk [r]      tree vertices, 0-based
    G u v ax ay bx by [r]            graph vertices, 0-based
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .geometry import Curve, GeometricGraph, Point


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Instance:
    kind: str  # "curve", "tree" or "graph"
    points: Curve
    edges: tuple[tuple[int, int], ...] = ()
    t: float = 1.0

    def graph(self) -> GeometricGraph:
        return GeometricGraph(self.points, self.edges)


@dataclass(frozen=True)
class WorkloadRecord:
    kind: str  # "C", "T" or "G"
    i: int  # lo (1-based) for curves, u otherwise
    j: int  # hi (1-based) for curves, v otherwise
    points: tuple[Point, ...]
    r: float | None = None
    line: int = field(default=0, compare=False)  # source line, for error messages

    @property
    def is_decision(self) -> bool:
        return self.r is not None


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if s and not s.startswith("#"):
            yield no, s.split()


def _float(tok: str, no: int) -> float:
    try:
        x = float(tok)
    except ValueError:
        raise FormatError(f"bad number {tok!r}", no) from None
    if not math.isfinite(x):
        raise FormatError(f"non-finite number {tok!r}", no)
    return x


def _int(tok: str, no: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"bad integer {tok!r}", no) from None


def parse_instance(text: str) -> Instance:
    it = _lines(text)
    try:
        no, head = next(it)
    except StopIteration:
        raise FormatError("empty file") from None
    kind = head[0]
    if kind not in ("curve", "tree", "graph"):
        raise FormatError(f"unknown instance kind {kind!r}", no)
    want = {"curve": 2, "tree": 2, "graph": 4}[kind]
    if len(head) != want:
        raise FormatError(f"bad {kind} header", no)
    n = _int(head[1], no)
    if n < 1:
        raise FormatError("instance needs at least one point", no)
    m = n - 1 if kind == "tree" else 0
    t = 1.0
    if kind == "graph":
        m = _int(head[2], no)
        t = _float(head[3], no)
    pts = []
    edges = []
    last = no
    for _ in range(n):
        try:
            no, tok = next(it)
        except StopIteration:
            raise FormatError(f"expected {n} points", last) from None
        if len(tok) != 2:
            raise FormatError("point line needs two numbers", no)
        pts.append((_float(tok[0], no), _float(tok[1], no)))
        last = no
    for _ in range(m):
        try:
            no, tok = next(it)
        except StopIteration:
            raise FormatError(f"expected {m} edges", last) from None
        if len(tok) != 2:
            raise FormatError("edge line needs two indices", no)
        i, j = _int(tok[0], no), _int(tok[1], no)
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise FormatError(f"bad edge ({i}, {j})", no)
        edges.append((i, j))
        last = no
    for no, _ in it:
        raise FormatError("trailing data", no)
    inst = Instance(kind, tuple(pts), tuple(edges), t)
    if kind != "curve":
        try:
            g = inst.graph()
        except ValueError as e:
            raise FormatError(str(e)) from None
        if kind == "tree" and not g.is_tree():
            raise FormatError("tree edges do not form a tree")
    return inst


def _num(x: float) -> str:
    return repr(float(x))


def serialize_instance(inst: Instance) -> str:
    n = len(inst.points)
    if inst.kind == "curve":
        head = f"curve {n}"
    elif inst.kind == "tree":
        head = f"tree {n}"
    else:
        head = f"graph {n} {len(inst.edges)} {_num(inst.t)}"
    out = [head]
    out += [f"{_num(x)} {_num(y)}" for x, y in inst.points]
    if inst.kind != "curve":
        out += [f"{i} {j}" for i, j in inst.edges]
    return "\n".join(out) + "\n"


def parse_workload(text: str) -> list[WorkloadRecord]:
    out = []
    for no, tok in _lines(text):
        kind = tok[0]
        if kind in ("C", "T"):
            if len(tok) < 4:
                raise FormatError("record too short", no)
            k = _int(tok[3], no)
            if k < 1:
                raise FormatError("query needs at least one point", no)
            body = tok[4:]
            if len(body) not in (2 * k, 2 * k + 1):
                raise FormatError(f"expected {2 * k} coordinates", no)
        elif kind == "G":
            k = 2
            body = tok[3:]
            if len(body) not in (4, 5):
                raise FormatError("graph record needs ax ay bx by", no)
        else:
            raise FormatError(f"unknown record kind {kind!r}", no)
        if len(tok) < 3:
            raise FormatError("record too short", no)
        i, j = _int(tok[1], no), _int(tok[2], no)
        vals = [_float(x, no) for x in body]
        pts = tuple((vals[2 * s], vals[2 * s + 1]) for s in range(k))
        r = vals[2 * k] if len(vals) > 2 * k else None
        out.append(WorkloadRecord(kind, i, j, pts, r, no))
    return out


def serialize_workload(records: Iterable[WorkloadRecord]) -> str:
    lines = []
    for rec in records:
        coords = " ".join(f"{_num(x)} {_num(y)}" for x, y in rec.points)
        if rec.kind == "G":
            s = f"G {rec.i} {rec.j} {coords}"
        else:
            s = f"{rec.kind} {rec.i} {rec.j} {len(rec.points)} {coords}"
        if rec.r is not None:
            s += f" {_num(rec.r)}"
        lines.append(s)
    return "".join(line + "\n" for line in lines)


def format_answer(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    return format(x, ".17g")
