"""Degree distribution, hubs, and depth-limited neighborhoods."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InputError
from .graph import Graph


@dataclass(frozen=True)
class DegreeStats:
    min: int
    max: int
    mean: float
    median: float
    histogram: dict[int, int]

    def summary(self) -> str:
        return f"min={self.min} max={self.max} mean={self.mean:.2f} median={self.median:g}"


@dataclass(frozen=True)
class NeighborhoodCensus:
    root: int
    depth: int
    n_nodes: int
    n_edges: int


@dataclass(frozen=True)
class ReachProfile:
    root: int
    cumulative: tuple[int, ...]


def mean_degree(n: int, m: int) -> float:
    """Mean degree of an undirected graph with n nodes and m edges."""
    return 2.0 * m / n


def degree_stats(g: Graph) -> DegreeStats:
    if g.n < 1:
        raise InputError("graph has no nodes")
    deg = np.asarray(g.degree)
    values, counts = np.unique(deg, return_counts=True)
    return DegreeStats(
        min=int(deg.min()),
        max=int(deg.max()),
        mean=mean_degree(g.n, g.m),
        median=float(np.median(deg)),
        histogram={int(v): int(c) for v, c in zip(values, counts)},
    )


def top_degree_nodes(g: Graph, k: int) -> list[tuple[int, int]]:
    """The k highest-degree nodes, by degree descending then id ascending."""
    if not 1 <= k <= g.n:
        raise InputError(f"k must be in [1, {g.n}], got {k}")
    deg = np.asarray(g.degree)
    order = np.lexsort((np.arange(g.n), -deg))[:k]
    return [(int(u), int(deg[u])) for u in order]


def _check_root(g: Graph, root: int):
    if not 0 <= root < g.n:
        raise InputError(f"node {root} out of range for graph with n={g.n}")


def bfs_distances(g: Graph, root: int, max_depth: int = -1) -> np.ndarray:
    """Hop distance from ``root``; -1 for nodes not reached within max_depth."""
    _check_root(g, root)
    return _kernels.bfs_layers(np.asarray(g.indptr), np.asarray(g.indices), root, max_depth)


def neighborhood_census(g: Graph, root: int, depth: int) -> NeighborhoodCensus:
    """Nodes within ``depth`` hops and the edges induced among them."""
    if depth < 0:
        raise InputError("depth must be >= 0")
    reached = bfs_distances(g, root, depth) >= 0
    lo, hi, _ = g.edges()
    n_edges = int((reached[lo] & reached[hi]).sum())
    return NeighborhoodCensus(root, depth, int(reached.sum()), n_edges)


def reach_profile(g: Graph, root: int, max_depth: int) -> ReachProfile:
    """Cumulative count of nodes within distance d, for d = 0..max_depth."""
    if max_depth < 0:
        raise InputError("max_depth must be >= 0")
    dist = bfs_distances(g, root, max_depth)
    per_layer = np.bincount(dist[dist >= 0], minlength=max_depth + 1)
    return ReachProfile(root, tuple(int(c) for c in np.cumsum(per_layer)))
