"""Resolution-scaled modularity and the two building blocks built on it."""

from __future__ import annotations

import numpy as np

from ..graph import Graph
from ..partition import Partition, check_covers, relabel_first_seen
from ..errors import InputError
from . import _kernels
from .config import parse_resolution


MOVE_TOLERANCE = 1e-10


def seed_state(seed: int) -> np.ndarray:
    """Fresh splitmix64 state for a seed."""
    return np.array([np.uint64(seed % (1 << 64))], dtype=np.uint64)


def _arrays(g: Graph):
    return (np.asarray(g.indptr), np.asarray(g.indices), np.asarray(g.weights))


def _quality_raw(g: Graph, comm: np.ndarray, k: int, gamma: float) -> float:
    indptr, indices, weights = _arrays(g)
    return _kernels.quality(indptr, indices, weights, np.asarray(g.self_weight),
                            np.asarray(g.strength), comm, k, gamma, g.total_weight)


def quality(g: Graph, p: Partition, gamma=1.0) -> float:
    """Q = sum over communities of e_c/m - gamma * (d_c / 2m)^2.

    e_c is intra-community weight (self-loops counted once) and d_c the
    summed strength of the community.
    """
    check_covers(p, g.n)
    if g.total_weight <= 0:
        raise InputError("quality is undefined on a graph without edges")
    return _quality_raw(g, np.asarray(p.assignment), p.k, parse_resolution(gamma))


def move_nodes(g: Graph, comm: np.ndarray, gamma: float, state: np.ndarray, max_sweeps: int,
               tol: float = MOVE_TOLERANCE):
    """In-place local moving on a raw community array; returns (moves, sweeps, converged)."""
    comm_tot = _kernels.community_totals(np.asarray(g.strength), comm, g.n)
    indptr, indices, weights = _arrays(g)
    return _kernels.local_move(indptr, indices, weights, np.asarray(g.strength), comm, comm_tot,
                               gamma, g.total_weight, state, max_sweeps, tol)


def local_move(g: Graph, p: Partition, gamma=1.0, seed: int = 0,
               max_sweeps: int = 1000) -> tuple[Partition, bool]:
    """Move single nodes between neighboring communities while Q improves.

    Nodes are visited in a freshly shuffled order each sweep; the loop ends
    after a sweep without moves. Returns the new partition and whether any
    node moved.
    """
    check_covers(p, g.n)
    comm = np.array(p.assignment, dtype=np.int64)
    moves, _, _ = move_nodes(g, comm, parse_resolution(gamma), seed_state(seed), max_sweeps)
    if moves == 0:
        return p, False
    return Partition.from_labels(comm), True


def aggregate(g: Graph, p: Partition) -> Graph:
    """Collapse each community into a node carrying its internal weight as a self-loop."""
    check_covers(p, g.n)
    indptr, indices, weights = _arrays(g)
    new = _kernels.aggregate(indptr, indices, weights, np.asarray(g.self_weight),
                             np.asarray(p.assignment), p.k)
    return Graph(*new)


def split_disconnected(g: Graph, labels: np.ndarray) -> np.ndarray:
    """Give every connected piece of every community its own label."""
    from .._kernels import component_labels

    lo, hi, _ = g.edges()
    same = labels[lo] == labels[hi]
    sub = Graph.from_edges(lo[same], hi[same], n=g.n)
    pieces, _ = component_labels(np.asarray(sub.indptr), np.asarray(sub.indices))
    out, _ = relabel_first_seen(pieces)
    return out
