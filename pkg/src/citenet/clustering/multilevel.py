"""Louvain and Leiden multilevel optimizers."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ..errors import InputError
from ..graph import Graph
from ..partition import Partition, relabel_first_seen
from . import _kernels
from .config import ClusteringConfig
from .modularity import _quality_raw, aggregate, move_nodes, seed_state, split_disconnected

log = logging.getLogger(__name__)


@dataclass
class MultilevelResult:
    partition: Partition
    algorithm: str
    gamma: float
    seed: int
    levels: int = 0
    iterations: int = 0
    level_qualities: list[float] = field(default_factory=list)
    sweep_qualities: list[list[float]] = field(default_factory=list)

    @property
    def quality(self) -> float:
        return self.level_qualities[-1]


def _require_edges(g: Graph):
    if g.total_weight <= 0:
        raise InputError("clustering needs a graph with at least one edge")


def _sweeps_with_trace(g, comm, gamma, state, max_sweeps, flat_of, g0, trace, tol):
    """Local moving one sweep at a time, recording Q on the original graph."""
    moves = 0
    for _ in range(max_sweeps):
        mv, _, converged = move_nodes(g, comm, gamma, state, 1, tol)
        moves += mv
        flat, k = relabel_first_seen(comm[flat_of])
        trace.append(_quality_raw(g0, flat, k, gamma))
        if converged:
            break
    return moves


def run_louvain(g: Graph, cfg: ClusteringConfig | None = None, trace_sweeps: bool = False) -> MultilevelResult:
    """Alternate local moving and aggregation until no level improves Q."""
    cfg = cfg or ClusteringConfig()
    _require_edges(g)
    gamma = cfg.gamma
    state = seed_state(cfg.seed)
    flat_of = np.arange(g.n, dtype=np.int64)
    flat = Partition.singletons(g.n)
    result = MultilevelResult(flat, "louvain", gamma, cfg.seed)
    q_prev = _quality_raw(g, np.asarray(flat.assignment), flat.k, gamma)
    level_graph = g
    for level in range(cfg.max_levels):
        comm = np.arange(level_graph.n, dtype=np.int64)
        if trace_sweeps:
            sweeps = []
            moves = _sweeps_with_trace(level_graph, comm, gamma, state, cfg.max_passes_per_level,
                                       flat_of, g, sweeps, cfg.min_quality_gain)
            result.sweep_qualities.append(sweeps)
        else:
            moves, _, _ = move_nodes(level_graph, comm, gamma, state, cfg.max_passes_per_level,
                                       cfg.min_quality_gain)
        if moves == 0:
            break
        comm, k = relabel_first_seen(comm)
        flat_of = comm[flat_of]
        flat = Partition.from_labels(flat_of)
        q = _quality_raw(g, np.asarray(flat.assignment), flat.k, gamma)
        result.levels = level + 1
        result.level_qualities.append(q)
        log.debug("louvain level %d: %d -> %d nodes, Q=%.10f", level, level_graph.n, k, q)
        if q - q_prev < cfg.min_quality_gain:
            break
        q_prev = q
        level_graph = aggregate(level_graph, Partition(comm, k))
    if not result.level_qualities:
        result.level_qualities.append(q_prev)
    result.partition = flat
    return result


def louvain(g: Graph, cfg: ClusteringConfig | None = None) -> Partition:
    return run_louvain(g, cfg).partition


def refine_partition(g: Graph, comm: np.ndarray, k: int, gamma: float, theta: float,
                     state: np.ndarray) -> tuple[np.ndarray, int]:
    ref = _kernels.refine(np.asarray(g.indptr), np.asarray(g.indices), np.asarray(g.weights),
                          np.asarray(g.strength), comm, k, gamma, g.total_weight, theta, state)
    return relabel_first_seen(ref)


def _leiden_pass(g: Graph, comm: np.ndarray, cfg: ClusteringConfig, state: np.ndarray,
                 result: MultilevelResult, trace_sweeps: bool) -> np.ndarray:
    """One Leiden iteration starting from ``comm``; returns flat labels on ``g``."""
    gamma = cfg.gamma
    level_graph = g
    flat_of = np.arange(g.n, dtype=np.int64)  # original node -> level node
    for level in range(cfg.max_levels):
        if trace_sweeps:
            sweeps = []
            _sweeps_with_trace(level_graph, comm, gamma, state, cfg.max_passes_per_level,
                               flat_of, g, sweeps, cfg.min_quality_gain)
            result.sweep_qualities.append(sweeps)
        else:
            move_nodes(level_graph, comm, gamma, state, cfg.max_passes_per_level, cfg.min_quality_gain)
        comm, k = relabel_first_seen(comm)
        flat, kf = relabel_first_seen(comm[flat_of])
        q = _quality_raw(g, flat, kf, gamma)
        result.levels += 1
        result.level_qualities.append(q)
        log.debug("leiden level %d: %d nodes, %d communities, Q=%.10f", level, level_graph.n, k, q)
        if k == level_graph.n:
            break

        ref, kr = refine_partition(level_graph, comm, k, gamma, cfg.theta, state)
        if kr == level_graph.n:
            # refinement merged nothing; coarsen on the communities themselves
            ref, kr = comm, k
        next_comm = np.empty(kr, dtype=np.int64)
        next_comm[ref] = comm
        flat_of = ref[flat_of]
        level_graph = aggregate(level_graph, Partition(ref, kr))
        comm = next_comm
    return comm[flat_of]


def run_leiden(g: Graph, cfg: ClusteringConfig | None = None, trace_sweeps: bool = False) -> MultilevelResult:
    """Leiden: local moving, refinement into connected pieces, aggregation.

    The aggregate graph is built from the refined pieces, while the
    unrefined assignment seeds the next level. A pass stops once local
    moving leaves every aggregate node in its own community; the level
    graph shrinks every round, so this always happens.

    Passes repeat, each starting from the previous result, until one
    fails to raise Q by ``min_quality_gain`` or ``max_iterations`` is
    reached. Any community still disconnected at the end (only possible
    when a level cap cuts a pass short) is split into its connected
    parts, which never lowers Q.
    """
    cfg = cfg or ClusteringConfig()
    _require_edges(g)
    gamma = cfg.gamma
    state = seed_state(cfg.seed)
    result = MultilevelResult(Partition.singletons(g.n), "leiden", gamma, cfg.seed)

    labels = np.arange(g.n, dtype=np.int64)
    q_best = _quality_raw(g, labels, g.n, gamma)
    for _ in range(cfg.max_iterations):
        trial = _leiden_pass(g, labels.copy(), cfg, state, result, trace_sweeps)
        trial, k = relabel_first_seen(split_disconnected(g, trial))
        q = _quality_raw(g, trial, k, gamma)
        if q < q_best + cfg.min_quality_gain:
            if q >= q_best:
                labels = trial
            break
        labels, q_best = trial, q
        result.iterations += 1

    partition = Partition.from_labels(labels)
    q = _quality_raw(g, np.asarray(partition.assignment), partition.k, gamma)
    if q != result.level_qualities[-1]:
        result.level_qualities.append(q)
    result.partition = partition
    return result


def leiden(g: Graph, cfg: ClusteringConfig | None = None) -> Partition:
    return run_leiden(g, cfg).partition
