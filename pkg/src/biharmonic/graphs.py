"""Undirected graph container and edge-list I/O.

Graphs are stored in compressed adjacency form (``offsets`` / ``neighbors``)
with node ids remapped to dense 0-based integers at build time. The original
file ids are retained in ``orig_ids`` so query results can be reported in the
caller's id space. Neighbor lists are sorted ascending, which gives every
traversal a deterministic order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from collections import deque
from typing import Iterable, TextIO

import numpy as np

__all__ = [
    "Graph",
    "EdgeList",
    "GraphParseError",
    "UnknownNodeError",
    "BipartiteGraphError",
    "parse_edge_list",
    "build_graph",
    "largest_connected_component",
    "is_bipartite",
    "write_edge_list",
]


class GraphParseError(ValueError):
    """Malformed edge-list input; ``line_no`` is the 1-based offending line."""

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class UnknownNodeError(KeyError):
    """A query referenced an id that is not present in the graph."""


class BipartiteGraphError(ValueError):
    """Raised when an approximate method is asked to run on a bipartite graph."""


@dataclass
class EdgeList:
    """Raw parsed pairs, before any sanitation. File order is preserved."""

    pairs: list[tuple[int, int]]

    def __len__(self) -> int:
        return len(self.pairs)


@dataclass(eq=False)
class Graph:
    """Immutable undirected graph in compressed adjacency form.

    Attributes
    ----------
    n, m : node and undirected-edge counts.
    offsets : int64 array of length n+1; neighbors of v live in
        ``neighbors[offsets[v]:offsets[v+1]]``, sorted ascending.
    neighbors : int64 array of length 2m.
    degree : int64 array of length n; every entry is >= 1.
    min_degree : cached minimum degree.
    orig_ids : original id of each dense node, strictly increasing.
    """

    n: int
    m: int
    offsets: np.ndarray
    neighbors: np.ndarray
    degree: np.ndarray
    min_degree: int
    orig_ids: np.ndarray
    _bipartite: bool | None = field(default=None, repr=False)

    def neighbors_of(self, v: int) -> np.ndarray:
        return self.neighbors[self.offsets[v] : self.offsets[v + 1]]

    def to_original(self, v: int) -> int:
        return int(self.orig_ids[v])

    def to_internal(self, orig: int) -> int:
        # orig_ids is strictly increasing, so a binary search suffices.
        idx = int(np.searchsorted(self.orig_ids, orig))
        if idx >= self.n or self.orig_ids[idx] != orig:
            raise UnknownNodeError(orig)
        return idx

    @property
    def bipartite(self) -> bool:
        if self._bipartite is None:
            self._bipartite = is_bipartite(self)
        return self._bipartite

    def require_non_bipartite(self) -> None:
        if self.bipartite:
            raise BipartiteGraphError(
                "graph is bipartite; the truncation lengths diverge "
                "(spectral radius on the non-stationary subspace is 1)"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.m == other.m
            and np.array_equal(self.offsets, other.offsets)
            and np.array_equal(self.neighbors, other.neighbors)
            and np.array_equal(self.orig_ids, other.orig_ids)
        )


_COMMENT_PREFIXES = ("#", "%")


def parse_edge_list(text_stream: str | Iterable[str]) -> EdgeList:
    """Parse whitespace-separated ``u v`` lines into an :class:`EdgeList`.

    Lines starting with ``#`` or ``%`` are comments; blank lines are skipped.
    Node ids may be arbitrary non-negative integers (sparse, non-contiguous).
    """
    if isinstance(text_stream, str):
        lines: Iterable[str] = text_stream.splitlines()
    else:
        lines = text_stream
    pairs: list[tuple[int, int]] = []
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith(_COMMENT_PREFIXES):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphParseError(
                f"expected 2 tokens, got {len(tokens)}: {line!r}", line_no
            )
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphParseError(f"non-integer token in {line!r}", line_no) from None
        if u < 0 or v < 0:
            raise GraphParseError(f"negative node id in {line!r}", line_no)
        pairs.append((u, v))
    return EdgeList(pairs)


def build_graph(edges: EdgeList) -> Graph:
    """Sanitize an edge list and build the compressed representation.

    Ids are densely remapped (the original ids are kept, sorted ascending);
    self-loops are dropped; duplicate and reversed-duplicate edges collapse
    to a single undirected edge. Connectivity and bipartiteness are *not*
    checked here.
    """
    if not edges.pairs:
        raise ValueError("empty edge list")
    arr = np.asarray(edges.pairs, dtype=np.int64).reshape(-1, 2)
    arr = arr[arr[:, 0] != arr[:, 1]]  # drop self-loops
    if arr.size == 0:
        raise ValueError("empty edge list after dropping self-loops")
    lo = np.minimum(arr[:, 0], arr[:, 1])
    hi = np.maximum(arr[:, 0], arr[:, 1])
    orig_ids, flat = np.unique(np.concatenate([lo, hi]), return_inverse=True)
    lo_d, hi_d = flat[: len(lo)], flat[len(lo) :]
    undirected = np.unique(np.stack([lo_d, hi_d], axis=1), axis=0)
    return _from_undirected(undirected, orig_ids)


def _from_undirected(und: np.ndarray, orig_ids: np.ndarray) -> Graph:
    """Assemble a Graph from deduplicated dense (u < v) edge rows."""
    n = len(orig_ids)
    m = len(und)
    src = np.concatenate([und[:, 0], und[:, 1]])
    dst = np.concatenate([und[:, 1], und[:, 0]])
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    degree = np.bincount(src, minlength=n).astype(np.int64)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(degree, out=offsets[1:])
    return Graph(
        n=n,
        m=m,
        offsets=offsets,
        neighbors=np.ascontiguousarray(dst),
        degree=degree,
        min_degree=int(degree.min()),
        orig_ids=np.ascontiguousarray(orig_ids),
    )


def _component_labels(g: Graph) -> tuple[np.ndarray, int]:
    """BFS labeling; components are numbered in order of their smallest node."""
    labels = np.full(g.n, -1, dtype=np.int64)
    comp = 0
    for start in range(g.n):
        if labels[start] >= 0:
            continue
        labels[start] = comp
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in g.neighbors_of(u):
                if labels[v] < 0:
                    labels[v] = comp
                    queue.append(v)
        comp += 1
    return labels, comp


def largest_connected_component(g: Graph) -> Graph:
    """Induced subgraph on the largest component, ids remapped densely.

    Ties are broken toward the component containing the smallest original id
    (components are discovered in increasing dense-id order and dense ids are
    sorted by original id, so the first component of maximal size wins).
    """
    labels, ncomp = _component_labels(g)
    if ncomp == 1:
        return g
    sizes = np.bincount(labels, minlength=ncomp)
    keep_label = int(np.argmax(sizes))  # argmax picks the first maximal label
    keep = np.flatnonzero(labels == keep_label)
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[keep] = np.arange(len(keep), dtype=np.int64)
    rows = []
    for u in keep:
        for v in g.neighbors_of(u):
            if u < v:
                rows.append((remap[u], remap[v]))
    und = np.asarray(rows, dtype=np.int64).reshape(-1, 2)
    return _from_undirected(und, g.orig_ids[keep])


def is_bipartite(g: Graph) -> bool:
    """Breadth-first 2-coloring; works on disconnected graphs as well."""
    color = np.full(g.n, -1, dtype=np.int8)
    for start in range(g.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            cu = color[u]
            for v in g.neighbors_of(u):
                if color[v] < 0:
                    color[v] = 1 - cu
                    queue.append(v)
                elif color[v] == cu:
                    return False
    return True


def write_edge_list(g: Graph, stream: TextIO) -> None:
    """Emit ``u v`` per undirected edge with u < v, in original ids."""
    orig = g.orig_ids
    for u in range(g.n):
        for v in g.neighbors_of(u):
            if u < v:
                stream.write(f"{orig[u]} {orig[v]}\n")


def component_sizes(g: Graph) -> list[int]:
    """Sizes of all connected components, largest first."""
    labels, ncomp = _component_labels(g)
    sizes = np.bincount(labels, minlength=ncomp)
    return sorted((int(s) for s in sizes), reverse=True)
