"""Deterministic truncated-traversal estimators for pairwise queries.

The distance between s and t equals the squared norm (minus a mean
correction) of the degree-scaled accumulated hop probabilities of walks
from the two endpoints. Truncating the hop series after ell terms gives an
estimate whose error decays geometrically in ell; two formulas bound the
required length, one universal and one customized to the endpoint degrees.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .estimates import Estimate
from .graphs import Graph
from .spectral import SpectralInfo

__all__ = [
    "TruncationParams",
    "ResidualVector",
    "universal_length",
    "pairwise_length",
    "truncation_params",
    "push_residual",
    "beta_from_residual",
    "query_push",
    "query_push_plus",
]


@dataclass
class TruncationParams:
    ell_universal: int
    ell_pair: int | None
    ell: int
    lam: float
    epsilon: float


@dataclass
class ResidualVector:
    """Truncated degree-scaled probability residual for one node pair.

    ``values`` is dense over all nodes; ``touched`` lists (ascending) the
    nodes reached by probability mass from either endpoint. Masses per hop
    are recorded when requested, for conservation checks.
    """

    values: np.ndarray
    touched: np.ndarray
    n: int
    mass_history: tuple[np.ndarray, np.ndarray] | None = None


def _check_lambda_epsilon(lam: float, epsilon: float) -> None:
    if not (0.0 < lam < 1.0):
        raise ValueError(f"lambda must lie in (0, 1), got {lam}")
    if epsilon <= 0.0:
        raise ValueError(f"epsilon must be positive, got {epsilon}")


def universal_length(n: int, lam: float, epsilon: float) -> int:
    """Truncation length valid for every node pair (minimum 1)."""
    _check_lambda_epsilon(lam, epsilon)
    if n < 2:
        raise ValueError(f"need at least 2 nodes, got {n}")
    value = math.log(12.0 * n / (epsilon * (1.0 - lam) ** 2)) / math.log(1.0 / lam)
    return max(1, math.ceil(value))


def pairwise_length(g: Graph, s: int, t: int, lam: float, epsilon: float) -> int:
    """Truncation length customized to the degrees around one node pair.

    The two degree sums it needs are evaluated in a single pass over the
    degree array (algebraically expanded).
    """
    _check_lambda_epsilon(lam, epsilon)
    if s == t:
        raise ValueError("pairwise length is defined for distinct nodes only")
    deg = g.degree.astype(np.float64)
    a = 1.0 / deg[s] + 1.0 / deg[t]
    inv = 1.0 / deg
    sum_inv = float(inv.sum())
    sum_inv2 = float((inv * inv).sum())
    n = g.n
    # 6 * sum_v (a + 2/d_v)^2, expanded
    first = 6.0 * (n * a * a + 4.0 * a * sum_inv + 4.0 * sum_inv2)
    second = (6.0 / n) * (n * a + 2.0 * sum_inv) ** 2
    numerator = first + second
    value = math.log(numerator / (epsilon * (1.0 - lam) ** 2)) / math.log(1.0 / lam)
    return max(1, math.ceil(value))


def truncation_params(
    g: Graph,
    spectral: SpectralInfo,
    s: int,
    t: int,
    epsilon: float,
    use_pair: bool,
) -> TruncationParams:
    ell_u = universal_length(g.n, spectral.lam, epsilon)
    if use_pair:
        ell_p = pairwise_length(g, s, t, spectral.lam, epsilon)
        ell = min(ell_u, ell_p)
    else:
        ell_p = None
        ell = ell_u
    return TruncationParams(
        ell_universal=ell_u, ell_pair=ell_p, ell=ell, lam=spectral.lam, epsilon=epsilon
    )


def _validate_pair(g: Graph, s: int, t: int) -> None:
    if not (0 <= s < g.n and 0 <= t < g.n):
        raise ValueError(f"node ids out of range: ({s}, {t}) for n={g.n}")
    if s == t:
        raise ValueError("query requires two distinct nodes")


def push_residual(
    g: Graph, s: int, t: int, ell: int, record_mass: bool = False
) -> ResidualVector:
    """Residual h over ell hops: per node, the accumulated probability
    difference of the two endpoint walks divided once by its degree."""
    _validate_pair(g, s, t)
    if ell < 1:
        raise ValueError(f"truncation length must be >= 1, got {ell}")
    acc_s = np.zeros(g.n, dtype=np.float64)
    acc_t = np.zeros(g.n, dtype=np.float64)
    mass_s = np.empty(ell, dtype=np.float64)
    mass_t = np.empty(ell, dtype=np.float64)
    _kernels.walk_mass_accumulate(g.offsets, g.neighbors, s, ell, acc_s, mass_s)
    _kernels.walk_mass_accumulate(g.offsets, g.neighbors, t, ell, acc_t, mass_t)
    values = (acc_s - acc_t) / g.degree
    touched = np.flatnonzero((acc_s != 0.0) | (acc_t != 0.0))
    return ResidualVector(
        values=values,
        touched=touched,
        n=g.n,
        mass_history=(mass_s, mass_t) if record_mass else None,
    )


def beta_from_residual(h: ResidualVector, n: int) -> float:
    """Squared norm of the residual minus the mean correction."""
    vals = h.values[h.touched]
    total = float(vals.sum())
    return float(vals @ vals) - total * total / n


def _query_push_impl(
    g: Graph, spectral: SpectralInfo, s: int, t: int, epsilon: float,
    use_pair: bool, method: str,
) -> Estimate:
    _validate_pair(g, s, t)
    g.require_non_bipartite()
    start = time.perf_counter()
    tp = truncation_params(g, spectral, s, t, epsilon, use_pair=use_pair)
    rv = push_residual(g, s, t, tp.ell)
    value = beta_from_residual(rv, g.n)
    elapsed = time.perf_counter() - start
    return Estimate(
        value=value,
        method=method,
        walks_or_iters=tp.ell,
        seconds=elapsed,
        params={
            "ell": tp.ell,
            "ell_universal": tp.ell_universal,
            "ell_pair": tp.ell_pair,
            "lambda": tp.lam,
            "epsilon": epsilon,
            "touched": int(len(rv.touched)),
        },
    )


def query_push(g: Graph, spectral: SpectralInfo, s: int, t: int, epsilon: float) -> Estimate:
    """Pairwise query with the universal truncation length."""
    return _query_push_impl(g, spectral, s, t, epsilon, use_pair=False, method="push")


def query_push_plus(g: Graph, spectral: SpectralInfo, s: int, t: int, epsilon: float) -> Estimate:
    """Pairwise query with the smaller of the universal and pair lengths."""
    return _query_push_impl(g, spectral, s, t, epsilon, use_pair=True, method="push+")
