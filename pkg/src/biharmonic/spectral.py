"""Extremal spectral quantities of the walk matrix and the Laplacian.

Two numbers drive every approximate query: the spectral radius of the walk
matrix on its non-stationary subspace (controls how fast truncated series
converge) and the algebraic connectivity (yields upper bounds on the
distance values). Both are obtained by power iteration on shifted,
positive-semidefinite operators with the known trivial eigenvector
deflated, so no external eigensolver is required.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.sparse as sp

from .graphs import Graph, component_sizes

__all__ = [
    "SpectralInfo",
    "ConvergenceError",
    "estimate_lambda",
    "estimate_gamma2",
    "spectral_info",
]

DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITER = 10_000
LAMBDA_SLACK = 0.01
LAMBDA_CEIL = 1.0 - 1e-9


class ConvergenceError(RuntimeError):
    """Power iteration did not reach the requested residual."""

    def __init__(self, message: str, last_vector: np.ndarray, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.last_vector = last_vector
        self.residual = residual


@dataclass
class SpectralInfo:
    """Spectral parameters consumed by the approximation algorithms.

    ``lam`` is the safety-inflated walk-matrix radius (always < 1),
    ``gamma2`` the algebraic connectivity, and ``phi = 2 / gamma2**2`` the
    distance upper bound used when subsampling nodal queries.
    """

    lam: float
    gamma2: float
    phi: float


def adjacency_csr(g: Graph) -> sp.csr_matrix:
    data = np.ones(len(g.neighbors), dtype=np.float64)
    return sp.csr_matrix((data, g.neighbors, g.offsets), shape=(g.n, g.n))


def _require_connected(g: Graph) -> None:
    sizes = component_sizes(g)
    if len(sizes) != 1:
        raise ValueError(
            f"graph must be connected (components of sizes {sizes[:5]}...)"
        )


def _power_iteration(
    matvec: Callable[[np.ndarray], np.ndarray],
    n: int,
    deflate: list[np.ndarray],
    tol: float,
    max_iter: int,
    rng: np.random.Generator,
    scale_of: Callable[[float], float],
) -> float:
    """Dominant eigenvalue of a PSD operator, deflated directions removed.

    Stops when the eigen-residual ||Mx - theta*x|| drops below
    tol * scale_of(theta); for a symmetric operator the residual bounds
    the distance from theta to the nearest eigenvalue, so the returned
    value carries an absolute error of at most the threshold even when
    near-degenerate eigenvalues stall the directional convergence.
    """
    x = rng.standard_normal(n)
    for d in deflate:
        x -= (d @ x) * d
    nx = np.linalg.norm(x)
    if nx == 0.0:
        raise ValueError("degenerate start vector")
    x /= nx
    theta = 0.0
    resid = np.inf
    for _ in range(max_iter):
        y = matvec(x)
        for d in deflate:
            y -= (d @ y) * d
        theta = float(x @ y)
        resid = float(np.linalg.norm(y - theta * x))
        if resid <= tol * scale_of(theta):
            return theta
        ny = np.linalg.norm(y)
        if ny == 0.0:
            # operator annihilates the deflated subspace: eigenvalue 0
            return 0.0
        x = y / ny
    raise ConvergenceError(
        f"power iteration did not converge within {max_iter} iterations", x, resid
    )


def estimate_lambda(
    g: Graph,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    seed: int = 0,
) -> float:
    """Walk-matrix radius max(|second largest|, |most negative|) eigenvalue.

    Runs two deflated power iterations on shifted symmetric operators:
    I + Q isolates the second largest eigenvalue, I - Q the most negative
    one (Q is the degree-normalized adjacency, similar to the walk
    matrix). The stationary eigenvector, known in closed form, is deflated
    every iteration. Returns the raw estimate; safety inflation is applied
    by :func:`spectral_info`.
    """
    _require_connected(g)
    g.require_non_bipartite()
    adj = adjacency_csr(g)
    d_inv_sqrt = 1.0 / np.sqrt(g.degree.astype(np.float64))
    top = np.sqrt(g.degree.astype(np.float64))
    top /= np.linalg.norm(top)

    def q_matvec(x: np.ndarray) -> np.ndarray:
        return d_inv_sqrt * (adj @ (d_inv_sqrt * x))

    rng = np.random.default_rng(seed)
    theta_plus = _power_iteration(
        lambda x: x + q_matvec(x), g.n, [top], tol, max_iter, rng,
        scale_of=lambda th: max(abs(th - 1.0), 1e-12),
    )
    theta_minus = _power_iteration(
        lambda x: x - q_matvec(x), g.n, [top], tol, max_iter, rng,
        scale_of=lambda th: max(abs(1.0 - th), 1e-12),
    )
    lam_second = theta_plus - 1.0
    lam_most_negative = 1.0 - theta_minus
    return max(abs(lam_second), abs(lam_most_negative))


def estimate_gamma2(
    g: Graph,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    seed: int = 0,
) -> float:
    """Second-smallest Laplacian eigenvalue (algebraic connectivity).

    Power iteration on gamma_max*I - L with gamma_max = 2 * max degree
    (an upper bound on the Laplacian spectrum), deflating the constant
    vector; the dominant eigenvalue of the shifted operator is
    gamma_max - gamma2.
    """
    _require_connected(g)
    adj = adjacency_csr(g)
    deg = g.degree.astype(np.float64)
    gamma_max = 2.0 * float(deg.max())
    ones = np.full(g.n, 1.0 / np.sqrt(g.n))

    def shifted(x: np.ndarray) -> np.ndarray:
        return gamma_max * x - (deg * x - adj @ x)

    rng = np.random.default_rng(seed)
    theta = _power_iteration(
        shifted, g.n, [ones], tol, max_iter, rng,
        scale_of=lambda th: max(gamma_max - th, 1e-12),
    )
    return gamma_max - theta


def spectral_info(
    g: Graph,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    seed: int = 0,
    lam: float | None = None,
    gamma2: float | None = None,
    slack: float = LAMBDA_SLACK,
) -> SpectralInfo:
    """Estimate (or accept overrides for) the spectral parameters.

    The estimated radius is inflated by ``slack`` before use: an
    overestimate only lengthens the truncated series, which preserves the
    error guarantee, while an underestimate would silently break it.
    Overrides bypass both estimation and inflation but are still clamped
    below 1.
    """
    if lam is None:
        lam_val = estimate_lambda(g, tol=tol, max_iter=max_iter, seed=seed) * (1.0 + slack)
    else:
        if lam <= 0.0:
            raise ValueError(f"lambda override must be positive, got {lam}")
        lam_val = lam
    lam_val = min(lam_val, LAMBDA_CEIL)
    if gamma2 is None:
        g2 = estimate_gamma2(g, tol=tol, max_iter=max_iter, seed=seed)
    else:
        if gamma2 <= 0.0:
            raise ValueError(f"gamma2 override must be positive, got {gamma2}")
        g2 = gamma2
    return SpectralInfo(lam=lam_val, gamma2=g2, phi=2.0 / (g2 * g2))
