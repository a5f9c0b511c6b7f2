"""Random-walk estimators for pairwise queries.

Two samplers estimate the truncated quantity that the deterministic
traversal computes exactly. The fixed-budget sampler draws a worst-case
number of walk quadruples and tallies per-length-pair acceptance coins;
the feedback sampler scores whole quadruples through degree-weighted
coincidence statistics and stops early once an empirical Bernstein
confidence radius drops below half the error budget.

Walk convention used throughout: a walk drawn for truncation length ell
takes ell - 1 steps and contributes all ell recorded positions, start
included. This makes the sample mean match the ell-term truncated series.
"""
from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .estimates import Estimate, QueryTimeout
from .graphs import Graph
from .push import truncation_params
from .spectral import SpectralInfo

__all__ = [
    "Walk",
    "EstimatorState",
    "random_walk",
    "xi",
    "xi_prime",
    "psi_bound",
    "sample_z",
    "sample_z_block",
    "r_star",
    "bernstein_radius",
    "query_swf",
    "query_stw",
]

DEFAULT_BATCH_SIZE = 256
_STW_CHUNK = 16_384

Walk = np.ndarray  # int64 positions, walk[0] = start node


def _inv_degrees(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    inv = 1.0 / g.degree.astype(np.float64)
    return inv, inv * inv


def random_walk(g: Graph, start: int, length: int, rng: np.random.Generator) -> Walk:
    """Simple random walk of ``length`` steps; returns length+1 positions."""
    if not 0 <= start < g.n:
        raise ValueError(f"start node {start} out of range")
    if length < 0:
        raise ValueError(f"walk length must be >= 0, got {length}")
    nodes = np.empty(length + 1, dtype=np.int64)
    nodes[0] = start
    cur = start
    offsets, neighbors, degree = g.offsets, g.neighbors, g.degree
    for i in range(length):
        cur = neighbors[offsets[cur] + rng.integers(0, degree[cur])]
        nodes[i + 1] = cur
    return nodes


def xi(w1: Walk, w2: Walk, g: Graph) -> float:
    """Coincidence statistic: sum of 1/d_x^2 over coinciding position pairs."""
    _, inv_deg2 = _inv_degrees(g)
    matches = (w1[:, None] == w2[None, :]).sum(axis=1)
    return float((matches * inv_deg2[w1]).sum())


def xi_prime(w1: Walk, w2: Walk, g: Graph) -> float:
    """Degree-product statistic: sum of 1/(d_x d_y) over all position pairs."""
    inv_deg, _ = _inv_degrees(g)
    return float(inv_deg[w1].sum() * inv_deg[w2].sum())


def psi_bound(ell: int, min_degree: int, n: int) -> float:
    """Deterministic range bound on a single sample (walks of ell positions)."""
    md2 = float(min_degree) ** 2
    return 2.0 * ell * ell / md2 + 2.0 * ell * ell / (n * md2)


def r_star(ell: int, min_degree: int, n: int, epsilon: float, delta: float) -> int:
    """Worst-case sample cap from the range bound."""
    if min(ell, min_degree, n) <= 0 or epsilon <= 0:
        raise ValueError("ell, min_degree, n, epsilon must be positive")
    if not (0.0 < delta <= 1.0):
        raise ValueError(f"delta must lie in (0, 1], got {delta}")
    psi = psi_bound(ell, min_degree, n)
    return math.ceil(psi * psi * math.log(2.0 / delta) / (2.0 * epsilon * epsilon))


def bernstein_radius(k: int, var_hat: float, psi: float, delta: float) -> float:
    """Empirical Bernstein confidence radius after k samples."""
    if k < 1:
        raise ValueError(f"need at least one sample, got k={k}")
    if var_hat < 0.0:
        raise ValueError(f"variance must be non-negative, got {var_hat}")
    log_term = math.log(3.0 / delta)
    return math.sqrt(2.0 * var_hat * log_term / k) + 3.0 * psi * log_term / k


def sample_z(g: Graph, s: int, t: int, ell: int, rng: np.random.Generator) -> float:
    """One unbiased sample of the ell-term truncated pair distance.

    Draws four walks of ell - 1 steps (two from s, then two from t) seeded
    from the provided generator and combines their coincidence statistics.
    """
    return float(sample_z_block(g, s, t, ell, 1, int(rng.integers(0, 2**32)))[0])


def sample_z_block(g: Graph, s: int, t: int, ell: int, count: int, seed: int) -> np.ndarray:
    """Vectorized batch of samples; pure function of (graph, s, t, ell, seed)."""
    if s == t:
        raise ValueError("sampling requires two distinct nodes")
    if ell < 1:
        raise ValueError(f"truncation length must be >= 1, got {ell}")
    inv_deg, inv_deg2 = _inv_degrees(g)
    out = np.empty(count, dtype=np.float64)
    _kernels.sample_z_block(
        g.offsets, g.neighbors, inv_deg, inv_deg2, s, t, ell, count,
        np.uint32(seed & 0xFFFFFFFF), out,
    )
    return out


@dataclass
class EstimatorState:
    """Running first and second moments of a Bernstein-stopped sampler."""

    k: int
    sum_z: float
    sum_z2: float
    psi: float
    epsilon: float
    delta: float
    r_star: int

    @classmethod
    def fresh(cls, psi: float, epsilon: float, delta: float, cap: int) -> "EstimatorState":
        return cls(k=0, sum_z=0.0, sum_z2=0.0, psi=psi, epsilon=epsilon,
                   delta=delta, r_star=cap)

    def update(self, zs: np.ndarray) -> None:
        self.k += len(zs)
        self.sum_z += float(zs.sum())
        self.sum_z2 += float(zs @ zs)

    @property
    def mean(self) -> float:
        return self.sum_z / self.k

    @property
    def var_hat(self) -> float:
        # population variance, clamped against rounding
        return max(self.sum_z2 / self.k - self.mean**2, 0.0)

    def radius(self) -> float:
        return bernstein_radius(self.k, self.var_hat, self.psi, self.delta)


def merge_states(parts: list[tuple[int, float, float]], template: EstimatorState) -> EstimatorState:
    """Combine (count, sum, sum-of-squares) triples from parallel workers."""
    merged = EstimatorState.fresh(template.psi, template.epsilon, template.delta,
                                  template.r_star)
    for k, sz, sz2 in parts:
        merged.k += k
        merged.sum_z += sz
        merged.sum_z2 += sz2
    return merged


def _validate_query(g: Graph, s: int, t: int, epsilon: float, delta: float) -> None:
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise ValueError(f"node ids out of range: ({s}, {t}) for n={g.n}")
    if s == t:
        raise ValueError("query requires two distinct nodes")
    if not (0.0 < epsilon < 1.0):
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not (0.0 < delta < 1.0):
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    g.require_non_bipartite()


def _batch_seed(root: int, index: int) -> np.uint32:
    return np.uint32(np.random.SeedSequence((root, index)).generate_state(1)[0])


def query_swf(
    g: Graph,
    spectral: SpectralInfo,
    s: int,
    t: int,
    epsilon: float,
    delta: float,
    rng: np.random.Generator,
    batch_size: int = DEFAULT_BATCH_SIZE,
    max_samples: int | None = None,
    deadline: float | None = None,
) -> Estimate:
    """Feedback-driven sampler with empirical Bernstein early stopping.

    Samples walk quadruples in batches, merging (count, sum, sum-of-
    squares) after each batch and stopping as soon as the confidence
    radius is at most epsilon/2, or at the worst-case cap. With
    probability at least 1 - delta the result is within epsilon of the
    true pair distance. Identical (seed, batch_size) reproduce the same
    estimate and sample count.
    """
    _validate_query(g, s, t, epsilon, delta)
    start_time = time.perf_counter()
    ell = truncation_params(g, spectral, s, t, epsilon, use_pair=True).ell
    psi = psi_bound(ell, g.min_degree, g.n)
    cap_star = r_star(ell, g.min_degree, g.n, epsilon, delta)
    cap = cap_star if max_samples is None else min(cap_star, max_samples)
    root = int(rng.integers(0, 2**32))
    state = EstimatorState.fresh(psi, epsilon, delta, cap_star)
    stopped_by = "cap"
    batch_index = 0
    while state.k < cap:
        want = min(batch_size, cap - state.k)
        zs = sample_z_block(g, s, t, ell, want, int(_batch_seed(root, batch_index)))
        assert np.all(np.abs(zs) <= psi * (1.0 + 1e-12)), "sample outside range bound"
        state.update(zs)
        batch_index += 1
        if state.radius() <= epsilon / 2.0:
            stopped_by = "radius"
            break
        if deadline is not None and time.perf_counter() > deadline:
            raise QueryTimeout(f"swf query ({s},{t}) exceeded its time budget")
    if stopped_by == "cap" and cap < cap_star:
        warnings.warn(
            f"swf stopped at the sample cap {cap} < r*={cap_star}; the "
            f"(epsilon, delta) guarantee does not apply to this estimate",
            stacklevel=2,
        )
    return Estimate(
        value=state.mean,
        method="swf",
        walks_or_iters=state.k,
        seconds=time.perf_counter() - start_time,
        params={
            "ell": ell,
            "walk_steps": ell - 1,
            "psi": psi,
            "r_star": cap_star,
            "batch": batch_size,
            "stopped_by": stopped_by,
            "epsilon": epsilon,
            "delta": delta,
        },
    )


def stw_sample_count(walk_steps: int, epsilon: float, delta: float) -> int:
    """Worst-case quadruple count for the fixed-budget sampler.

    Evaluated at the walk-step count (minimum 1 to keep the logarithm
    finite for single-position walks).
    """
    ell = max(1, walk_steps)
    return math.ceil(128.0 * ell**4 * math.log(8.0 * ell * ell / delta) / epsilon**2)


def query_stw(
    g: Graph,
    spectral: SpectralInfo,
    s: int,
    t: int,
    epsilon: float,
    delta: float,
    rng: np.random.Generator,
    sample_override: int | None = None,
    deadline: float | None = None,
) -> Estimate:
    """Fixed-budget sampler over truncated walks with acceptance coins.

    Draws r walk quadruples of full length; for every length pair (i, j)
    the walk prefixes serve as the shorter walks (a prefix of a simple
    random walk is itself one). Coinciding end nodes increment per-pair
    counters with probability one over the squared end degree; a second
    family increments unconditionally with the inverse degree product.
    The estimate sums the scaled counter differences over all length
    pairs. ``sample_override`` caps r below its worst-case value.
    """
    _validate_query(g, s, t, epsilon, delta)
    start_time = time.perf_counter()
    n_pos = truncation_params(g, spectral, s, t, epsilon, use_pair=True).ell
    walk_steps = n_pos - 1
    r_needed = stw_sample_count(walk_steps, epsilon, delta)
    r = r_needed if sample_override is None else min(r_needed, sample_override)
    if r < r_needed:
        warnings.warn(
            f"stw sample cap {r} < worst-case {r_needed}; the estimate is "
            f"unbiased but the (epsilon, delta) guarantee does not apply",
            stacklevel=2,
        )
    inv_deg, _ = _inv_degrees(g)
    mats = [np.zeros((n_pos, n_pos), dtype=np.int64) for _ in range(8)]
    root = int(rng.integers(0, 2**32))
    done = 0
    chunk_index = 0
    while done < r:
        take = min(_STW_CHUNK, r - done)
        _kernels.stw_chunk(
            g.offsets, g.neighbors, inv_deg, s, t, n_pos, take,
            _batch_seed(root, chunk_index), *mats,
        )
        done += take
        chunk_index += 1
        if deadline is not None and time.perf_counter() > deadline:
            raise QueryTimeout(f"stw query ({s},{t}) exceeded its time budget")
    w, x, y, z, wb, xb, yb, zb = mats
    first = float((w + x - y - z).sum()) / r
    second = float((wb + xb - yb - zb).sum()) / (g.n * r)
    return Estimate(
        value=first - second,
        method="stw",
        walks_or_iters=r,
        seconds=time.perf_counter() - start_time,
        params={
            "ell": n_pos,
            "walk_steps": walk_steps,
            "r_needed": r_needed,
            "capped": r < r_needed,
            "epsilon": epsilon,
            "delta": delta,
        },
    )
