"""Benchmark protocol: seeded query sets, ground truth, CSV rows.

Ground truth follows the measurement protocol of the deterministic
traversal run for 1000 hops, which converges far beyond double precision
on well-connected graphs; the dense oracle cross-checks it on small
inputs. Rows are emitted in a fixed (method, epsilon, pair) order with
deterministic per-query seeds, so repeated runs produce byte-identical
CSVs apart from the timing column.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .estimates import Estimate, QueryTimeout
from .exact import DenseOracle, build_oracle, exact_pair
from .graphs import Graph
from .nodal import query_snb, query_snb_plus
from .push import beta_from_residual, push_residual, query_push, query_push_plus
from .spectral import SpectralInfo
from .walks import query_stw, query_swf

__all__ = [
    "CSV_HEADER",
    "BenchRow",
    "GROUND_TRUTH_HOPS",
    "PAIRWISE_METHODS",
    "NODAL_METHODS",
    "sample_pairs",
    "ground_truth_pair",
    "dispatch_query",
    "run_bench",
    "summarize",
]

CSV_HEADER = "method,s,t,estimate,ground_truth,abs_error,walks_or_iters,time_ms,epsilon,seed"
GROUND_TRUTH_HOPS = 1000
PAIRWISE_METHODS = ("exact", "push", "push+", "stw", "swf")
NODAL_METHODS = ("snb", "snb+")
DEFAULT_EPS_LIST = (0.01, 0.02, 0.05, 0.1, 0.2)
DEFAULT_NUM_PAIRS = 100
DEFAULT_TIME_BUDGET = 86_400.0
DEFAULT_MAX_SAMPLES = 1_000_000


def _fmt(x: float | int | None, time_field: bool = False) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{x:.3f}" if time_field else f"{x:.12g}"


@dataclass
class BenchRow:
    method: str
    s: int | None
    t: int | None
    estimate: float | None
    ground_truth: float | None
    abs_error: float | None
    walks_or_iters: int | None
    time_ms: float | None
    epsilon: float | None
    seed: int | None

    def to_csv(self) -> str:
        return ",".join(
            [
                self.method,
                _fmt(self.s),
                _fmt(self.t),
                _fmt(self.estimate),
                _fmt(self.ground_truth),
                _fmt(self.abs_error),
                _fmt(self.walks_or_iters),
                _fmt(self.time_ms, time_field=True),
                _fmt(self.epsilon),
                _fmt(self.seed),
            ]
        )


def sample_pairs(n: int, num_pairs: int, seed: int) -> list[tuple[int, int]]:
    """``num_pairs`` distinct unordered pairs, uniform, in draw order."""
    max_pairs = n * (n - 1) // 2
    if num_pairs > max_pairs:
        raise ValueError(f"requested {num_pairs} pairs but only {max_pairs} exist")
    rng = np.random.default_rng(seed)
    seen: set[tuple[int, int]] = set()
    out: list[tuple[int, int]] = []
    while len(out) < num_pairs:
        u = int(rng.integers(0, n))
        v = int(rng.integers(0, n))
        if u == v:
            continue
        key = (min(u, v), max(u, v))
        if key in seen:
            continue
        seen.add(key)
        out.append(key)
    return out


def ground_truth_pair(g: Graph, s: int, t: int, hops: int = GROUND_TRUTH_HOPS) -> float:
    rv = push_residual(g, s, t, hops)
    return beta_from_residual(rv, g.n)


def _ground_truths(g: Graph, pairs: list[tuple[int, int]], jobs: int) -> list[float]:
    if jobs <= 1:
        return [ground_truth_pair(g, s, t) for s, t in pairs]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda p: ground_truth_pair(g, *p), pairs))


def dispatch_query(
    method: str,
    g: Graph,
    spectral: SpectralInfo | None,
    oracle: DenseOracle | None,
    s: int,
    t: int | None,
    epsilon: float,
    delta: float,
    rng: np.random.Generator,
    max_samples: int | None,
    batch_size: int,
    jobs: int = 1,
    deadline: float | None = None,
) -> Estimate:
    """Run one query by method name on internal node ids."""
    if method == "exact":
        assert oracle is not None
        start = time.perf_counter()
        value = exact_pair(oracle, s, t)
        return Estimate(value, "exact", 0, time.perf_counter() - start)
    if method == "exact-nodal":
        assert oracle is not None
        from .exact import exact_nodal

        start = time.perf_counter()
        value = exact_nodal(oracle, s)
        return Estimate(value, "exact-nodal", 0, time.perf_counter() - start)
    assert spectral is not None
    if method == "push":
        return query_push(g, spectral, s, t, epsilon)
    if method == "push+":
        return query_push_plus(g, spectral, s, t, epsilon)
    if method == "stw":
        return query_stw(g, spectral, s, t, epsilon, delta, rng,
                         sample_override=max_samples, deadline=deadline)
    if method == "swf":
        return query_swf(g, spectral, s, t, epsilon, delta, rng,
                         batch_size=batch_size, max_samples=max_samples,
                         deadline=deadline)
    if method in ("snb", "snb+"):
        fn = query_snb if method == "snb" else query_snb_plus
        nodal = fn(g, spectral, s, epsilon, delta, rng, jobs=jobs,
                   batch_size=batch_size, max_samples=max_samples)
        return Estimate(nodal.value, method, nodal.walks, nodal.seconds,
                        params={"pairs_evaluated": nodal.pairs_evaluated,
                                "sampling_probability": nodal.sampling_probability})
    raise ValueError(f"unknown method {method!r}")


def run_bench(
    g: Graph,
    spectral: SpectralInfo,
    methods: list[str],
    eps_list: list[float],
    num_pairs: int,
    seed: int,
    delta: float = 0.01,
    max_samples: int | None = DEFAULT_MAX_SAMPLES,
    batch_size: int = 256,
    jobs: int = 1,
    time_budget: float = DEFAULT_TIME_BUDGET,
    size_limit: int = 5000,
) -> tuple[list[BenchRow], list[tuple[int, int]]]:
    """Full protocol: sample pairs, compute ground truth, run every
    (method, epsilon) combination, return rows in deterministic order.

    A method/epsilon combination is excluded (timeout rows, empty
    estimates) once one of its queries exceeds ``time_budget`` seconds.
    """
    for m in methods:
        if m not in PAIRWISE_METHODS:
            raise ValueError(f"bench supports pairwise methods only, got {m!r}")
    pairs = sample_pairs(g.n, num_pairs, seed)
    truths = _ground_truths(g, pairs, jobs)
    oracle = build_oracle(g, size_limit) if "exact" in methods else None

    excluded: set[tuple[str, float]] = set()

    def run_one(task: tuple[int, str, int, float, int]) -> BenchRow:
        mi, method, ei, eps, pi = task
        s, t = pairs[pi]
        truth = truths[pi]
        orig_s, orig_t = g.to_original(s), g.to_original(t)
        uses_seed = method in ("stw", "swf")
        if (method, eps) in excluded:
            return BenchRow(method, orig_s, orig_t, None, truth, None, None,
                            None, eps, seed if uses_seed else None)
        qrng = np.random.default_rng(np.random.SeedSequence((seed, mi, ei, pi)))
        start = time.perf_counter()
        try:
            est = dispatch_query(
                method, g, spectral, oracle, s, t, eps, delta, qrng,
                max_samples, batch_size, deadline=start + time_budget,
            )
        except QueryTimeout:
            excluded.add((method, eps))
            return BenchRow(method, orig_s, orig_t, None, truth, None, None,
                            (time.perf_counter() - start) * 1000.0, eps,
                            seed if uses_seed else None)
        if est.seconds > time_budget:
            excluded.add((method, eps))
        return BenchRow(
            method=method,
            s=orig_s,
            t=orig_t,
            estimate=est.value,
            ground_truth=truth,
            abs_error=abs(est.value - truth),
            walks_or_iters=est.walks_or_iters,
            time_ms=est.seconds * 1000.0,
            epsilon=eps,
            seed=seed if uses_seed else None,
        )

    tasks = [
        (mi, method, ei, eps, pi)
        for mi, method in enumerate(methods)
        for ei, eps in enumerate(eps_list)
        for pi in range(len(pairs))
    ]
    if jobs <= 1:
        rows = [run_one(task) for task in tasks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(run_one, tasks))
    return rows, pairs


def summarize(rows: list[BenchRow]) -> list[tuple[str, float, float, float, int]]:
    """Per (method, epsilon): mean absolute error, mean time, query count."""
    groups: dict[tuple[str, float], list[BenchRow]] = {}
    for row in rows:
        groups.setdefault((row.method, row.epsilon), []).append(row)
    out = []
    for (method, eps), grp in groups.items():
        ok = [r for r in grp if r.abs_error is not None]
        mean_err = float(np.mean([r.abs_error for r in ok])) if ok else float("nan")
        timed = [r for r in ok if r.time_ms is not None]
        mean_ms = float(np.mean([r.time_ms for r in timed])) if timed else float("nan")
        out.append((method, eps, mean_err, mean_ms, len(ok)))
    return out
