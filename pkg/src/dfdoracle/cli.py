"""Command-line entry point: ``dfdoracle {gen,query,verify,bench}``.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import bench, instances
from .formats import (FormatError, Instance, WorkloadRecord, format_answer, parse_instance,
                      parse_workload, serialize_instance, serialize_workload)
from .runner import VERIFY_LIMIT, agrees, answer, build_oracle, check_record

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# -- gen ----------------------------------------------------------------------


def _random_workload(inst: Instance, count: int, seed: int, decisions: bool) -> list[WorkloadRecord]:
    rng = np.random.default_rng(seed)
    n = len(inst.points)
    lo_xy = np.min(np.array(inst.points), axis=0)
    hi_xy = np.max(np.array(inst.points), axis=0)

    def pt():
        return tuple((lo_xy + rng.random(2) * (hi_xy - lo_xy)).tolist())

    out = []
    for s in range(count):
        r = float(rng.random() * np.max(hi_xy - lo_xy)) if decisions and s % 2 else None
        if inst.kind == "curve":
            lo = int(rng.integers(1, n + 1))
            hi = int(rng.integers(lo, n + 1))
            k = int(rng.integers(1, 5))
            out.append(WorkloadRecord("C", lo, hi, tuple(pt() for _ in range(k)), r))
        elif inst.kind == "tree":
            u, v = (int(x) for x in rng.integers(0, n, size=2))
            k = int(rng.integers(1, 5))
            out.append(WorkloadRecord("T", u, v, tuple(pt() for _ in range(k)), r))
        else:
            u, v = (int(x) for x in rng.integers(0, n, size=2))
            if s % 4 < 2:
                ab = (inst.points[u], inst.points[v])
            else:
                ab = (pt(), pt())
            out.append(WorkloadRecord("G", u, v, ab, r))
    return out


def cmd_gen(args) -> int:
    seed = args.seed
    if args.koch is not None:
        inst = Instance("curve", instances.koch(args.koch))
    elif args.random_curve is not None:
        inst = Instance("curve", instances.random_curve(args.random_curve, seed))
    elif args.random_tree is not None:
        T = instances.random_tree(args.random_tree, seed)
        inst = Instance("tree", T.points, T.edges)
    elif args.delaunay is not None:
        G = instances.random_delaunay(args.delaunay, seed)
        inst = Instance("graph", G.points, G.edges, 1.0)
    elif args.spanner is not None:
        G = instances.greedy_spanner(instances.random_points(args.spanner, seed), args.stretch)
        # a t-spanner is 2t-local
        inst = Instance("graph", G.points, G.edges, 2.0 * args.stretch)
    else:
        base = parse_instance(_read(args.workload))
        recs = _random_workload(base, args.count, seed, args.decisions)
        _write(serialize_workload(recs), args.out)
        return EXIT_OK
    _write(serialize_instance(inst), args.out)
    return EXIT_OK


# -- query / verify -------------------------------------------------------------


def _load(args) -> tuple[Instance, list[WorkloadRecord]]:
    inst = parse_instance(_read(args.instance))
    recs = parse_workload(_read(args.workload))
    for rec in recs:
        check_record(inst, rec)
    return inst, recs


def _answers(inst, recs, seed, threads):
    oracle = build_oracle(inst, seed)
    if threads and threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            return list(pool.map(lambda rec: answer(oracle, rec), recs))
    return [answer(oracle, rec) for rec in recs]


def cmd_query(args) -> int:
    inst, recs = _load(args)
    out = _answers(inst, recs, args.seed, args.threads)
    _write("".join(format_answer(x) + "\n" for x in out), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    inst, recs = _load(args)
    limit = VERIFY_LIMIT[inst.kind]
    if len(inst.points) > limit:
        raise UsageError(f"instance too large to verify ({len(inst.points)} > {limit} vertices)")
    out = _answers(inst, recs, args.seed, args.threads)
    bad = [rec.line for rec, x in zip(recs, out) if not agrees(inst, rec, x)]
    for line in bad:
        print(f"mismatch at line {line}", file=sys.stderr)
    print(f"mismatches: {len(bad)}")
    return EXIT_MISMATCH if bad else EXIT_OK


# -- bench ----------------------------------------------------------------------


def cmd_bench(args) -> int:
    if args.instance:
        inst = parse_instance(_read(args.instance))
        if inst.kind != "curve":
            raise UsageError("bench instances must be curves")
        rows = [bench.measure(len(inst.points), args.queries, args.seed, graph=False, curve=inst.points)]
        fits = {}
    else:
        try:
            sizes = [int(s) for s in args.sizes.split(",") if s]
        except ValueError:
            raise UsageError(f"bad --sizes {args.sizes!r}") from None
        if not sizes or min(sizes) < 1:
            raise UsageError("--sizes needs positive integers")
        rows, fits = bench.run(sizes, args.queries, args.seed, graph=not args.no_graph)
    if args.json:
        text = json.dumps({"rows": rows, "exponents": fits}, indent=2) + "\n"
    else:
        text = bench.format_table(rows, fits) + "\n"
    _write(text, args.out)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="dfdoracle", description="Discrete Fréchet distance oracles.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write an instance or a random workload")
    what = g.add_mutually_exclusive_group(required=True)
    what.add_argument("--koch", type=int, metavar="LEVEL")
    what.add_argument("--random-curve", type=int, metavar="N")
    what.add_argument("--random-tree", type=int, metavar="N")
    what.add_argument("--delaunay", type=int, metavar="N")
    what.add_argument("--spanner", type=int, metavar="N", help="greedy spanner on N random points")
    what.add_argument("--workload", metavar="INSTANCE", help="random workload for an instance file")
    g.add_argument("--stretch", type=float, default=2.0, help="spanner stretch factor")
    g.add_argument("--count", type=int, default=100, help="workload records")
    g.add_argument("--decisions", action="store_true", help="make every other record a decision")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    for name, func, text in (("query", cmd_query, "answer a workload"),
                             ("verify", cmd_verify, "compare answers with brute force")):
        q = sub.add_parser(name, help=text)
        q.add_argument("instance")
        q.add_argument("workload")
        q.add_argument("--seed", type=int, default=0)
        q.add_argument("--threads", type=int, default=1)
        q.add_argument("--out")
        q.set_defaults(func=func)

    b = sub.add_parser("bench", help="structure-touch scaling table")
    b.add_argument("instance", nargs="?", help="curve file (default: random instances)")
    b.add_argument("--sizes", default=",".join(map(str, bench.DEFAULT_SIZES)))
    b.add_argument("--queries", type=int, default=50)
    b.add_argument("--no-graph", action="store_true", help="skip the Delaunay segment column")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--json", action="store_true")
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
