"""Deterministic graph generators used by tests and experiment scripts."""
from __future__ import annotations

import numpy as np

from .graphs import Graph, EdgeList, build_graph, largest_connected_component, is_bipartite

__all__ = [
    "complete_graph",
    "path_graph",
    "cycle_graph",
    "star_graph",
    "erdos_renyi",
    "connected_non_bipartite_er",
]


def complete_graph(n: int) -> Graph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return build_graph(EdgeList(pairs))


def path_graph(n: int) -> Graph:
    return build_graph(EdgeList([(i, i + 1) for i in range(n - 1)]))


def cycle_graph(n: int) -> Graph:
    return build_graph(EdgeList([(i, (i + 1) % n) for i in range(n)]))


def star_graph(leaves: int) -> Graph:
    return build_graph(EdgeList([(0, i) for i in range(1, leaves + 1)]))


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """G(n, p); isolated nodes vanish (nodes exist only through edges)."""
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    mask = rng.random(len(iu)) < p
    pairs = list(zip(iu[mask].tolist(), ju[mask].tolist()))
    if not pairs:
        raise ValueError(f"G({n}, {p}) draw with seed {seed} produced no edges")
    return build_graph(EdgeList(pairs))


def connected_non_bipartite_er(
    n: int, p: float, seed: int, max_attempts: int = 100
) -> Graph:
    """First connected, non-bipartite G(n, p) draw on all n nodes.

    Retries with sub-seeds (seed, attempt) until the draw is connected with
    every node present and contains an odd cycle; deterministic per seed.
    """
    for attempt in range(max_attempts):
        g = erdos_renyi(n, p, seed=int(np.random.SeedSequence((seed, attempt)).generate_state(1)[0]))
        if g.n != n:
            continue
        lcc = largest_connected_component(g)
        if lcc.n == n and not is_bipartite(lcc):
            return lcc
    raise RuntimeError(f"no connected non-bipartite G({n},{p}) within {max_attempts} draws")
