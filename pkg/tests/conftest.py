"""Shared fixtures: small graphs and dense-spectrum reference helpers.

The dense helpers recompute everything from the adjacency matrix with
numpy's eigensolvers and serve as independent oracles for the library's
own estimates.
"""
from __future__ import annotations

import numpy as np
import pytest

from biharmonic import (
    Graph,
    build_oracle,
    complete_graph,
    connected_non_bipartite_er,
    cycle_graph,
    path_graph,
)


def dense_adjacency(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=np.float64)
    for u in range(g.n):
        a[u, g.neighbors_of(u)] = 1.0
    return a


def dense_walk_eigs(g: Graph) -> np.ndarray:
    """Eigenvalues of the symmetrized walk matrix, ascending."""
    a = dense_adjacency(g)
    d_inv_sqrt = 1.0 / np.sqrt(g.degree.astype(np.float64))
    q = a * d_inv_sqrt[:, None] * d_inv_sqrt[None, :]
    return np.linalg.eigvalsh(q)


def dense_lambda(g: Graph) -> float:
    eigs = dense_walk_eigs(g)
    return max(abs(eigs[0]), abs(eigs[-2]))


def dense_laplacian_eigs(g: Graph) -> np.ndarray:
    a = dense_adjacency(g)
    lap = np.diag(g.degree.astype(np.float64)) - a
    return np.linalg.eigvalsh(lap)


@pytest.fixture(scope="session")
def k3() -> Graph:
    return complete_graph(3)


@pytest.fixture(scope="session")
def p3() -> Graph:
    return path_graph(3)


@pytest.fixture(scope="session")
def c5() -> Graph:
    return cycle_graph(5)


@pytest.fixture(scope="session")
def er20() -> Graph:
    return connected_non_bipartite_er(20, 0.3, seed=11)


@pytest.fixture(scope="session")
def er40() -> Graph:
    return connected_non_bipartite_er(40, 0.2, seed=5)


@pytest.fixture(scope="session")
def er100() -> Graph:
    # min degree 5 and algebraic connectivity ~3.8: the nodal subsampling
    # probability stays below 1 for moderate budgets on this instance
    return connected_non_bipartite_er(100, 0.1, seed=0)


@pytest.fixture(scope="session")
def er40_oracle(er40):
    return build_oracle(er40)


@pytest.fixture(scope="session")
def graph_zoo(k3, p3, c5, er20, er40) -> list[Graph]:
    """Small connected graphs; the bipartite path included where allowed."""
    return [k3, p3, c5, complete_graph(6), cycle_graph(7), er20, er40]


@pytest.fixture(scope="session")
def non_bipartite_zoo(k3, c5, er20, er40) -> list[Graph]:
    return [k3, c5, complete_graph(6), cycle_graph(7), er20, er40]
