"""Nodal queries: the aggregate distance from one node to all others.

The exhaustive estimator answers one feedback-sampled pairwise query per
other node and sums them. The subsampled variant draws a Bernoulli subset
of targets whose success probability is calibrated by the distance upper
bound, estimates only those pairs at a halved budget, and rescales the sum
by the inverse probability.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .estimates import Estimate
from .graphs import Graph
from .spectral import SpectralInfo
from .walks import query_swf

__all__ = [
    "NodalEstimate",
    "bernoulli_subset",
    "pair_rng",
    "query_snb",
    "query_snb_plus",
]


@dataclass
class NodalEstimate:
    node: int
    value: float
    pairs_evaluated: int
    sampling_probability: float
    per_pair_epsilon: float
    walks: int = 0
    seconds: float = 0.0


def pair_rng(root: int, target: int) -> np.random.Generator:
    """Per-target generator; a fixed derivation so that the exhaustive and
    the full-subset subsampled estimator consume identical streams."""
    return np.random.default_rng(np.random.SeedSequence((root, 0, target)))


def _subset_rng(root: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence((root, 1)))


def bernoulli_subset(n: int, p: float, rng: np.random.Generator) -> np.ndarray:
    """Each node of 0..n-1 independently with probability p (ascending)."""
    if not (0.0 < p <= 1.0):
        raise ValueError(f"success probability must lie in (0, 1], got {p}")
    if p == 1.0:
        return np.arange(n, dtype=np.int64)
    return np.flatnonzero(rng.random(n) < p).astype(np.int64)


def _validate_nodal(g: Graph, s: int, epsilon: float, delta: float) -> None:
    if not 0 <= s < g.n:
        raise ValueError(f"node id {s} out of range for n={g.n}")
    if not (0.0 < epsilon < 1.0):
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not (0.0 < delta < 1.0):
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    g.require_non_bipartite()


def _pair_estimates(
    g: Graph,
    spectral: SpectralInfo,
    s: int,
    targets: np.ndarray,
    per_pair_epsilon: float,
    per_pair_delta: float,
    root: int,
    jobs: int,
    batch_size: int,
    max_samples: int | None,
) -> list[Estimate]:
    def one(t: int) -> Estimate:
        return query_swf(
            g, spectral, s, int(t), per_pair_epsilon, per_pair_delta,
            pair_rng(root, int(t)), batch_size=batch_size, max_samples=max_samples,
        )

    if jobs <= 1 or len(targets) <= 1:
        return [one(t) for t in targets]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(one, targets))


def query_snb(
    g: Graph,
    spectral: SpectralInfo,
    s: int,
    epsilon: float,
    delta: float,
    rng: np.random.Generator,
    jobs: int = 1,
    batch_size: int = 256,
    max_samples: int | None = None,
) -> NodalEstimate:
    """Exhaustive nodal estimator: one pairwise query per other node.

    Each pair runs at failure probability delta/(n-1) so the union over
    all pairs holds with probability at least 1 - delta; the summed error
    is then at most n * epsilon.
    """
    _validate_nodal(g, s, epsilon, delta)
    start = time.perf_counter()
    targets = np.array([t for t in range(g.n) if t != s], dtype=np.int64)
    per_pair_delta = delta / len(targets)
    root = int(rng.integers(0, 2**63))
    estimates = _pair_estimates(
        g, spectral, s, targets, epsilon, per_pair_delta, root, jobs,
        batch_size, max_samples,
    )
    value = 0.0
    walks = 0
    for est in estimates:  # plain sum, no scaling
        value += est.value
        walks += est.walks_or_iters
    return NodalEstimate(
        node=s,
        value=value,
        pairs_evaluated=len(targets),
        sampling_probability=1.0,
        per_pair_epsilon=epsilon,
        walks=walks,
        seconds=time.perf_counter() - start,
    )


def query_snb_plus(
    g: Graph,
    spectral: SpectralInfo,
    s: int,
    epsilon: float,
    delta: float,
    rng: np.random.Generator,
    jobs: int = 1,
    batch_size: int = 256,
    max_samples: int | None = None,
) -> NodalEstimate:
    """Subsampled nodal estimator.

    Splits the budget evenly between subsampling and per-pair estimation
    (theta = tau = epsilon/2), keeps each other node with probability
    p = phi * sqrt(log n) / (sqrt(n) * tau) clamped to 1 (natural log;
    phi is the distance upper bound from the spectral module), and
    rescales the subset sum by 1/p. With p clamped to 1 this degrades
    exactly to the exhaustive estimator at the halved budget.
    """
    _validate_nodal(g, s, epsilon, delta)
    start = time.perf_counter()
    theta = epsilon / 2.0
    tau = epsilon / 2.0
    p = min(spectral.phi * math.sqrt(math.log(g.n)) / (math.sqrt(g.n) * tau), 1.0)
    root = int(rng.integers(0, 2**63))
    subset = bernoulli_subset(g.n, p, _subset_rng(root))
    subset = subset[subset != s]
    walks = 0
    if len(subset) == 0:
        value = 0.0
    else:
        per_pair_delta = delta / len(subset)
        estimates = _pair_estimates(
            g, spectral, s, subset, theta, per_pair_delta, root, jobs,
            batch_size, max_samples,
        )
        total = 0.0
        for est in estimates:
            total += est.value
            walks += est.walks_or_iters
        value = total / p
    return NodalEstimate(
        node=s,
        value=value,
        pairs_evaluated=len(subset),
        sampling_probability=p,
        per_pair_epsilon=theta,
        walks=walks,
        seconds=time.perf_counter() - start,
    )
