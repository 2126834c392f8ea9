"""Synthetic graphs with known structure, for tests and demos."""

from __future__ import annotations

import numpy as np

from .graph import Graph

F7_EDGES = ((0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (4, 6), (5, 6))
F7_LABELS = ("M", "M", "M", "BOTH", "ORMS", "ORMS", "ORMS")


def f7() -> Graph:
    """Two triangles bridged through node 3: {0,1,2} - 3 - {4,5,6}."""
    e = np.array(F7_EDGES)
    return Graph.from_edges(e[:, 0], e[:, 1])


def _pairs_within(rng, size, count):
    """``count`` distinct unordered pairs from ``size`` nodes, as (i, j) with i < j."""
    idx = rng.choice(size * (size - 1) // 2, size=count, replace=False)
    j = ((1 + np.sqrt(1 + 8 * idx.astype(np.float64))) // 2).astype(np.int64)
    # repair rounding at triangular-number boundaries
    j -= (j * (j - 1) // 2 > idx)
    j += ((j + 1) * j // 2 <= idx)
    i = idx - j * (j - 1) // 2
    return i, j


def _pairs_between(rng, size_a, size_b, count):
    idx = rng.choice(size_a * size_b, size=count, replace=False)
    return idx // size_b, idx % size_b


def stochastic_block_model(sizes, p_in: float, p_out: float, seed: int = 0):
    """Planted-partition SBM.

    Every node pair inside a block is linked with probability ``p_in`` and
    across blocks with ``p_out``. Edge counts per block pair are binomial and
    the pairs are then drawn uniformly without replacement, which gives the
    exact SBM distribution without visiting all n^2 pairs.

    Returns ``(graph, blocks)`` where ``blocks[u]`` is u's planted block.
    """
    rng = np.random.default_rng(seed)
    sizes = [int(s) for s in sizes]
    offsets = np.concatenate([[0], np.cumsum(sizes)])
    n = int(offsets[-1])
    src, dst = [], []
    for a, size_a in enumerate(sizes):
        for b in range(a, len(sizes)):
            if a == b:
                pairs = size_a * (size_a - 1) // 2
                cnt = rng.binomial(pairs, p_in) if pairs else 0
                i, j = _pairs_within(rng, size_a, cnt)
                i, j = i + offsets[a], j + offsets[a]
            else:
                size_b = sizes[b]
                cnt = rng.binomial(size_a * size_b, p_out)
                i, j = _pairs_between(rng, size_a, size_b, cnt)
                i, j = i + offsets[a], j + offsets[b]
            src.append(i)
            dst.append(j)
    src = np.concatenate(src).astype(np.int64)
    dst = np.concatenate(dst).astype(np.int64)
    blocks = np.repeat(np.arange(len(sizes)), sizes)
    return Graph.from_edges(src, dst, n=n), blocks


def random_connected_graph(n: int, p: float, rng) -> Graph:
    """G(n, p) plus a random spanning tree, so the result is connected."""
    order = rng.permutation(n)
    parents = [order[rng.integers(0, i)] for i in range(1, n)]
    src = list(order[1:]) + []
    dst = list(parents)
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < p
    src = np.concatenate([np.array(src, dtype=np.int64), iu[keep]])
    dst = np.concatenate([np.array(dst, dtype=np.int64), ju[keep]])
    return Graph.from_edges(src, dst, n=n)
