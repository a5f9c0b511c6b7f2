"""Command-line surface: graph stats, queries, ground truth, benchmarks.

Exit codes: 0 success, 2 usage error, 3 data error (parse failures,
unknown ids, bipartite input to approximate methods), 4 numeric or
convergence error.
"""
from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from .bench import (
    CSV_HEADER,
    DEFAULT_EPS_LIST,
    DEFAULT_MAX_SAMPLES,
    DEFAULT_NUM_PAIRS,
    DEFAULT_TIME_BUDGET,
    BenchRow,
    NODAL_METHODS,
    PAIRWISE_METHODS,
    dispatch_query,
    ground_truth_pair,
    run_bench,
    summarize,
)
from .estimates import QueryTimeout
from .exact import DEFAULT_SIZE_LIMIT, OracleSizeError, build_oracle
from .graphs import (
    BipartiteGraphError,
    Graph,
    GraphParseError,
    UnknownNodeError,
    build_graph,
    component_sizes,
    largest_connected_component,
    parse_edge_list,
)
from .spectral import ConvergenceError, estimate_gamma2, estimate_lambda, spectral_info

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4

ALL_METHODS = PAIRWISE_METHODS + NODAL_METHODS


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return build_graph(parse_edge_list(fh))


def _lcc_or_warn(g: Graph) -> Graph:
    lcc = largest_connected_component(g)
    if lcc.n < g.n:
        print(
            f"note: restricting to the largest connected component "
            f"({lcc.n} of {g.n} nodes)",
            file=sys.stderr,
        )
    return lcc


def _spectral_for(g: Graph, args: argparse.Namespace):
    return spectral_info(g, seed=getattr(args, "seed", 0) or 0,
                         lam=getattr(args, "lam", None),
                         gamma2=getattr(args, "gamma2", None))


def _add_common_query_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--eps", type=float, default=0.1, help="additive error budget")
    p.add_argument("--delta", type=float, default=0.01, help="failure probability")
    p.add_argument("--seed", type=int, default=0, help="random seed")
    p.add_argument("--max-samples", type=int, default=DEFAULT_MAX_SAMPLES,
                   help="per-query walk-quadruple cap (0 disables the cap)")
    p.add_argument("--batch", type=int, default=256,
                   help="feedback sampler batch size between stopping checks")
    p.add_argument("--jobs", type=int, default=1, help="worker threads")
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="override the walk-matrix radius estimate")
    p.add_argument("--gamma2", type=float, default=None,
                   help="override the algebraic connectivity estimate")
    p.add_argument("--size-limit", type=int, default=DEFAULT_SIZE_LIMIT,
                   help="dense oracle size limit (exact method)")
    p.add_argument("--time-budget", type=float, default=DEFAULT_TIME_BUDGET,
                   help="per-query wall-clock budget in seconds")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biharmonic",
        description="Pairwise and nodal biharmonic distance queries on "
                    "undirected graphs (exact oracle plus approximations "
                    "with additive-error guarantees).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_stats = sub.add_parser("stats", help="describe an edge-list file")
    p_stats.add_argument("graph")
    p_stats.add_argument("--spectral", action="store_true",
                         help="also estimate spectral parameters of the LCC")
    p_stats.add_argument("--lcc", action="store_true",
                         help="list all component sizes")

    p_query = sub.add_parser("query", help="answer one query")
    p_query.add_argument("graph")
    p_query.add_argument("--method", required=True, choices=ALL_METHODS)
    p_query.add_argument("-s", type=int, required=True, help="source node (original id)")
    p_query.add_argument("-t", type=int, default=None, help="target node (pairwise methods)")
    _add_common_query_flags(p_query)

    p_ep = sub.add_parser("exact-pair", help="dense-oracle pairwise value")
    p_ep.add_argument("graph")
    p_ep.add_argument("-s", type=int, required=True)
    p_ep.add_argument("-t", type=int, required=True)
    p_ep.add_argument("--size-limit", type=int, default=DEFAULT_SIZE_LIMIT)

    p_en = sub.add_parser("exact-nodal", help="dense-oracle nodal value")
    p_en.add_argument("graph")
    p_en.add_argument("-s", type=int, required=True)
    p_en.add_argument("--size-limit", type=int, default=DEFAULT_SIZE_LIMIT)

    p_gt = sub.add_parser("ground-truth",
                          help="converged traversal values for a pairs file")
    p_gt.add_argument("graph")
    p_gt.add_argument("pairs", help='file of "s t" lines (original ids)')
    p_gt.add_argument("out", help="output CSV path")
    p_gt.add_argument("--jobs", type=int, default=1)

    p_bench = sub.add_parser("bench", help="run the benchmark protocol")
    p_bench.add_argument("graph")
    p_bench.add_argument("--out", required=True, help="output CSV path")
    p_bench.add_argument("--methods", default="push,push+,stw,swf",
                         help="comma-separated subset of "
                              + ",".join(PAIRWISE_METHODS))
    p_bench.add_argument("--eps", default=",".join(str(e) for e in DEFAULT_EPS_LIST),
                         help="comma-separated error budgets")
    p_bench.add_argument("--pairs", type=int, default=DEFAULT_NUM_PAIRS,
                         help="number of random query pairs")
    p_bench.add_argument("--delta", type=float, default=0.01)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--max-samples", type=int, default=DEFAULT_MAX_SAMPLES)
    p_bench.add_argument("--batch", type=int, default=256)
    p_bench.add_argument("--jobs", type=int, default=1)
    p_bench.add_argument("--time-budget", type=float, default=DEFAULT_TIME_BUDGET,
                         help="per-query wall-clock budget in seconds")
    p_bench.add_argument("--lambda", dest="lam", type=float, default=None)
    p_bench.add_argument("--gamma2", type=float, default=None)
    p_bench.add_argument("--size-limit", type=int, default=DEFAULT_SIZE_LIMIT)
    return parser


def cmd_stats(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    sizes = component_sizes(g)
    lcc = largest_connected_component(g)
    print(f"nodes: {g.n}")
    print(f"edges: {g.m}")
    print(f"avg degree: {2.0 * g.m / g.n:.2f}")
    print(f"min degree: {g.min_degree}")
    print(f"bipartite: {'yes' if g.bipartite else 'no'}")
    print(f"lcc size: {lcc.n}")
    if args.lcc:
        print("component sizes: " + " ".join(str(s) for s in sizes))
    if args.spectral:
        lam = estimate_lambda(lcc)
        gamma2 = estimate_gamma2(lcc)
        print(f"lambda: {lam:.6f}")
        print(f"gamma2: {gamma2:.6f}")
    return EXIT_OK


def _print_row(row: BenchRow) -> None:
    print(CSV_HEADER)
    print(row.to_csv())


def cmd_query(args: argparse.Namespace) -> int:
    method = args.method
    pairwise = method in PAIRWISE_METHODS
    if pairwise and args.t is None:
        raise ValueError(f"method {method!r} is pairwise and needs -t")
    if not pairwise and args.t is not None:
        raise ValueError(f"method {method!r} is nodal; -t is not accepted")
    if method != "exact":
        if not (0.0 < args.eps < 1.0):
            raise ValueError(f"--eps must lie in (0, 1), got {args.eps}")
        if not (0.0 < args.delta < 1.0):
            raise ValueError(f"--delta must lie in (0, 1), got {args.delta}")
    g = _lcc_or_warn(load_graph(args.graph))
    s = g.to_internal(args.s)
    t = g.to_internal(args.t) if args.t is not None else None
    oracle = build_oracle(g, args.size_limit) if method == "exact" else None
    spectral = None if method == "exact" else _spectral_for(g, args)
    rng = np.random.default_rng(args.seed)
    max_samples = args.max_samples if args.max_samples > 0 else None
    est = dispatch_query(
        method, g, spectral, oracle, s, t, args.eps, args.delta, rng,
        max_samples, args.batch, jobs=args.jobs,
        deadline=time.perf_counter() + args.time_budget,
    )
    uses_seed = method in ("stw", "swf", "snb", "snb+")
    row = BenchRow(
        method=method,
        s=args.s,
        t=args.t,
        estimate=est.value,
        ground_truth=None,
        abs_error=None,
        walks_or_iters=est.walks_or_iters if method != "exact" else None,
        time_ms=est.seconds * 1000.0,
        epsilon=args.eps if method != "exact" else None,
        seed=args.seed if uses_seed else None,
    )
    _print_row(row)
    return EXIT_OK


def cmd_exact_pair(args: argparse.Namespace) -> int:
    g = _lcc_or_warn(load_graph(args.graph))
    oracle = build_oracle(g, args.size_limit)
    s, t = g.to_internal(args.s), g.to_internal(args.t)
    start = time.perf_counter()
    from .exact import exact_pair

    value = exact_pair(oracle, s, t)
    row = BenchRow("exact", args.s, args.t, value, None, None, None,
                   (time.perf_counter() - start) * 1000.0, None, None)
    _print_row(row)
    return EXIT_OK


def cmd_exact_nodal(args: argparse.Namespace) -> int:
    g = _lcc_or_warn(load_graph(args.graph))
    oracle = build_oracle(g, args.size_limit)
    s = g.to_internal(args.s)
    start = time.perf_counter()
    from .exact import exact_nodal

    value = exact_nodal(oracle, s)
    row = BenchRow("exact-nodal", args.s, None, value, None, None, None,
                   (time.perf_counter() - start) * 1000.0, None, None)
    _print_row(row)
    return EXIT_OK


def cmd_ground_truth(args: argparse.Namespace) -> int:
    g = _lcc_or_warn(load_graph(args.graph))
    with open(args.pairs, "r", encoding="utf-8") as fh:
        pairs = parse_edge_list(fh).pairs
    internal = [(g.to_internal(s), g.to_internal(t)) for s, t in pairs]
    with open(args.out, "w", encoding="utf-8") as out:
        out.write("s,t,ground_truth\n")
        for (orig_s, orig_t), (s, t) in zip(pairs, internal):
            value = ground_truth_pair(g, s, t)
            out.write(f"{orig_s},{orig_t},{value:.12g}\n")
    print(f"wrote {len(pairs)} ground-truth rows to {args.out}")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    eps_list = [float(e) for e in args.eps.split(",") if e.strip()]
    g = _lcc_or_warn(load_graph(args.graph))
    for m in methods:
        if m not in PAIRWISE_METHODS:
            raise ValueError(f"bench supports {PAIRWISE_METHODS}, got {m!r}")
    if any(m != "exact" for m in methods):
        g.require_non_bipartite()
        spectral = _spectral_for(g, args)
    else:
        spectral = None
    max_samples = args.max_samples if args.max_samples > 0 else None
    rows, _pairs = run_bench(
        g, spectral, methods, eps_list, args.pairs, args.seed,
        delta=args.delta, max_samples=max_samples, batch_size=args.batch,
        jobs=args.jobs, time_budget=args.time_budget,
        size_limit=args.size_limit,
    )
    with open(args.out, "w", encoding="utf-8") as out:
        out.write(CSV_HEADER + "\n")
        for row in rows:
            out.write(row.to_csv() + "\n")
    for method, eps, mean_err, mean_ms, count in summarize(rows):
        print(f"method={method} eps={eps:g} mean_abs_err={mean_err:.6g} "
              f"mean_time_ms={mean_ms:.3f} queries={count}")
    print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


_COMMANDS = {
    "stats": cmd_stats,
    "query": cmd_query,
    "exact-pair": cmd_exact_pair,
    "exact-nodal": cmd_exact_nodal,
    "ground-truth": cmd_ground_truth,
    "bench": cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (GraphParseError, UnknownNodeError, BipartiteGraphError,
            OracleSizeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ConvergenceError, QueryTimeout) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ArithmeticError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
