"""Command-line surface: build indexes, run queries, verify identities, bench.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 query error.
Given one configuration and seed, `build`, `query` and `verify` print
byte-identical output across runs; `bench` rows are deterministic except for
the wall-clock queries/second column.
"""

import argparse
import hashlib
import json
import os
import sys
import time

from . import index_io, mliq, randgen, rmq, verify
from .errors import ContractError, NotFoundError, ParseError, RangeError, ValidationError

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_QUERY_ERROR = 3

RMQ_ENGINES = ("checked", "direct", "ancestor", "scan")
MLIQ_ENGINES = ("naive", "weighted", "brute")


def _default_seed():
    env = os.environ.get("DUALTREE_SEED")
    if env is None:
        return 42
    try:
        return int(env)
    except ValueError:
        raise ValidationError(f"DUALTREE_SEED must be an integer, got {env!r}") from None


def build_parser():
    top = argparse.ArgumentParser(prog="dualtree", description=__doc__.splitlines()[0])
    sub = top.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build an index blob from an input file")
    b.add_argument("kind", choices=("array", "intervals"))
    b.add_argument("input")
    b.add_argument("-o", "--out", required=True, help="index blob path")
    b.add_argument("--format", choices=("text", "binary"), default="text", help="array file format")
    b.add_argument("--output", choices=("human", "tsv", "jsonl"), default="human")

    q = sub.add_parser("query", help="run one query against a built index")
    q.add_argument("index")
    q.add_argument("kind", choices=("rmq", "mliq"))
    q.add_argument("left", type=int, help="i (rmq) or a (mliq)")
    q.add_argument("right", type=int, help="j (rmq) or b (mliq)")
    q.add_argument("--engine", default=None, help="rmq: checked|direct|ancestor|scan; mliq: naive|weighted|brute")
    q.add_argument("--strict", action="store_true", help="mliq: strict containment (a_i < a and b_i > b)")
    q.add_argument("--stats", action="store_true", help="print primitive-operation counts")
    q.add_argument("--output", choices=("human", "tsv", "jsonl"), default="human")

    v = sub.add_parser("verify", help="run randomized identity suites")
    v.add_argument("suite", nargs="?", default="all", choices=verify.SUITES + ("all",))
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--trees", type=int, default=300)
    v.add_argument("--queries", type=int, default=2000)
    v.add_argument("--max-size", type=int, default=100)
    v.add_argument("--claim", choices=tuple(verify.CLAIMS), default=None,
                   help="run a differential claim check; prints counterexamples, never fails")
    v.add_argument("--output", choices=("human", "tsv", "jsonl"), default="human")

    be = sub.add_parser("bench", help="benchmark engines over a built index")
    be.add_argument("index")
    be.add_argument("kind", choices=("rmq", "mliq"))
    be.add_argument("--engine", default="all", help="comma list of engines, or 'all'")
    be.add_argument("--queries", type=int, default=10_000)
    be.add_argument("--seed", type=int, default=None)
    be.add_argument("--strict", action="store_true")
    return top


# -- build -------------------------------------------------------------------------


def cmd_build(args):
    if args.kind == "array":
        reader = index_io.read_array_text if args.format == "text" else index_io.read_array_binary
        values = reader(args.input)
        from .minheap import build_minheap

        h = build_minheap(values)
        stats = index_io.save_array_index(args.out, h)
        stats = {"kind": "array", "n": h.n, **stats}
    else:
        pairs = index_io.read_intervals_text(args.input)
        s = mliq.build_intervals(pairs)
        stats = index_io.save_interval_index(args.out, s)
        stats = {"kind": "intervals", "n": s.n, **stats}
    stats["blob_bytes"] = os.path.getsize(args.out)
    if args.output == "jsonl":
        print(json.dumps(stats))
    elif args.output == "tsv":
        print("\t".join(stats))
        print("\t".join(str(v) for v in stats.values()))
    else:
        for k, v in stats.items():
            print(f"{k}: {v}")
    return EXIT_OK


# -- query -------------------------------------------------------------------------


def _load_any(path):
    kind, _ = index_io._read_blob(path)
    if kind == index_io.KIND_ARRAY:
        return "array", index_io.load_array_index(path)
    return "intervals", index_io.load_interval_index(path)


def cmd_query(args):
    blob_kind, index = _load_any(args.index)
    counters = rmq.OpCounters()
    if args.kind == "rmq":
        if blob_kind != "array":
            raise ValidationError("rmq queries need an array index blob")
        engine = args.engine or "direct"
        if engine not in RMQ_ENGINES:
            raise ContractError(f"unknown rmq engine {engine!r}; expected one of {RMQ_ENGINES}")
        answer = rmq.range_min_index(index, args.left, args.right, engine=engine, counters=counters)
    else:
        if blob_kind != "intervals":
            raise ValidationError("mliq queries need an interval index blob")
        engine = args.engine or "naive"
        if engine not in MLIQ_ENGINES:
            raise ContractError(f"unknown mliq engine {engine!r}; expected one of {MLIQ_ENGINES}")
        solver = {"naive": mliq.mliq_naive, "weighted": mliq.mliq_weighted, "brute": mliq.mliq_bruteforce}[engine]
        if engine == "brute":
            answer = solver(index, args.left, args.right, strict=args.strict)
        else:
            answer = solver(index, args.left, args.right, strict=args.strict, counters=counters)
    text_answer = "None" if answer is None else str(answer)
    if args.output == "jsonl":
        record = {"answer": answer}
        if args.stats:
            record["ops"] = counters.as_dict()
        print(json.dumps(record))
    elif args.output == "tsv":
        row = [text_answer]
        header = ["answer"]
        if args.stats:
            header += list(counters.as_dict())
            row += [str(v) for v in counters.as_dict().values()]
        print("\t".join(header))
        print("\t".join(row))
    else:
        print(text_answer)
        if args.stats:
            print("ops: " + " ".join(f"{k}={v}" for k, v in counters.as_dict().items()))
    return EXIT_OK


# -- verify -------------------------------------------------------------------------


def cmd_verify(args):
    seed = args.seed if args.seed is not None else _default_seed()
    if args.claim:
        found, checked = verify.CLAIMS[args.claim](4)
        print(f"claim {args.claim}: {len(found)} counterexamples among {checked} trees")
        for t, lhs, rhs in found[:3]:
            print(f"  tree:  {_tree_text(t)}")
            lhs_text = _tree_text(lhs) if hasattr(lhs, "children_map") else lhs
            rhs_text = _tree_text(rhs) if hasattr(rhs, "children_map") else rhs
            print(f"    one way:   {lhs_text}")
            print(f"    other way: {rhs_text}")
        return EXIT_OK
    suites = verify.SUITES if args.suite == "all" else (args.suite,)
    results = verify.run_suites(suites, seed, trees=args.trees, queries=args.queries, max_size=args.max_size)
    failed = 0
    for r in results:
        if args.output == "jsonl":
            print(json.dumps({"suite": r.suite, "check": r.name, "passed": r.passed,
                              "failed": r.failed, "failures": r.failures}))
        elif args.output == "tsv":
            print(f"{r.suite}\t{r.name}\t{r.passed}\t{r.failed}")
        else:
            print(r.line())
            for detail in r.failures:
                print(f"    failure: {detail}")
        failed += r.failed
    summary = f"RESULT: {'pass' if not failed else 'FAIL'} ({len(results)} checks, {failed} failures, seed {seed})"
    if args.output == "human":
        print(summary)
    return EXIT_OK if not failed else EXIT_VERIFY_FAILED


def _tree_text(t):
    parts = []
    for v in t.nodes():
        kids = t.children(v)
        if kids:
            parts.append(f"{v}->[{','.join(str(c) for c in kids)}]")
    return " ".join(parts) if parts else f"single node {t.root}"


# -- bench --------------------------------------------------------------------------


def cmd_bench(args):
    seed = args.seed if args.seed is not None else _default_seed()
    blob_kind, index = _load_any(args.index)
    if args.kind == "rmq":
        if blob_kind != "array":
            raise ValidationError("rmq bench needs an array index blob")
        engines = RMQ_ENGINES if args.engine == "all" else tuple(args.engine.split(","))
        for e in engines:
            if e not in RMQ_ENGINES:
                raise ContractError(f"unknown rmq engine {e!r}")
        queries = _rmq_workload(index, seed, args.queries)
        runner = lambda e, q, c: rmq.range_min_index(index, q[0], q[1], engine=e, counters=c)
    else:
        if blob_kind != "intervals":
            raise ValidationError("mliq bench needs an interval index blob")
        engines = ("naive", "weighted") if args.engine == "all" else tuple(args.engine.split(","))
        for e in engines:
            if e not in MLIQ_ENGINES:
                raise ContractError(f"unknown mliq engine {e!r}")
        queries = _mliq_workload(index, seed, args.queries)
        solvers = {"naive": mliq.mliq_naive, "weighted": mliq.mliq_weighted, "brute": mliq.mliq_bruteforce}

        def runner(e, q, c):
            if e == "brute":
                return solvers[e](index, q[0], q[1], strict=args.strict)
            return solvers[e](index, q[0], q[1], strict=args.strict, counters=c)

    cols = ["engine", "queries", "qps", "answers_sha256", "mean_rank", "mean_select",
            "mean_rmq", "mean_open", "mean_close", "mean_bpselect"]
    print("\t".join(cols))
    if not queries:
        return EXIT_OK
    for e in engines:
        totals = rmq.OpCounters()
        digest = hashlib.sha256()
        t0 = time.perf_counter()
        for q in queries:
            ans = runner(e, q, totals)
            digest.update(str(ans).encode())
        elapsed = time.perf_counter() - t0
        k = len(queries) or 1
        qps = f"{len(queries) / elapsed:.0f}" if elapsed > 0 and queries else "0"
        row = [e, str(len(queries)), qps, digest.hexdigest()[:12]]
        row += [f"{getattr(totals, f) / k:.3f}" for f in ("rank", "select", "rmq", "open", "close", "bpselect")]
        print("\t".join(row))
    return EXIT_OK


def _rmq_workload(index, seed, count):
    rng = randgen.rng_for(seed, "bench-rmq")
    out = []
    for _ in range(count):
        i = rng.randint(1, index.n)
        j = rng.randint(i, index.n)
        out.append((i, j))
    return out


def _mliq_workload(index, seed, count):
    rng = randgen.rng_for(seed, "bench-mliq")
    hi = index.domain_max
    out = []
    for _ in range(count):
        a = rng.randint(0, hi)
        b = rng.randint(a, hi)
        out.append((a, b))
    return out


# -- entry point ----------------------------------------------------------------------


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"build": cmd_build, "query": cmd_query, "verify": cmd_verify, "bench": cmd_bench}
    try:
        return handlers[args.command](args)
    except (ValidationError, ParseError, FileNotFoundError, PermissionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except (ContractError, RangeError, NotFoundError) as exc:
        print(f"query error: {exc}", file=sys.stderr)
        return EXIT_QUERY_ERROR


if __name__ == "__main__":
    sys.exit(main())
