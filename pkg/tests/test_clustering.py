import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from citenet.clustering import (
    ClusteringConfig,
    aggregate,
    kmeans,
    leiden,
    local_move,
    louvain,
    normalized_laplacian,
    parse_resolution,
    quality,
    run_leiden,
    run_louvain,
    spectral_cluster,
    spectral_embedding,
)
from citenet.clustering.spectral import kmeans_inertia
from citenet.errors import InputError, RefusalError
from citenet.evaluation import cluster_purity
from citenet.generators import random_connected_graph, stochastic_block_model
from citenet.graph import EdgeList, Graph, LabelMap, build_graph
from citenet.partition import Partition

from conftest import best_quality, brute_quality, dense_adjacency, is_connected_subset, set_partitions

OPT_A = Partition.from_labels([0, 0, 0, 1, 1, 1, 1])
OPT_B = Partition.from_labels([0, 0, 0, 0, 1, 1, 1])
TRIANGLE = build_graph(EdgeList.from_pairs([(0, 1), (1, 2), (0, 2)]))
TWO_TRIANGLES = build_graph(EdgeList.from_pairs([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]))
BRIDGED = build_graph(EdgeList.from_pairs([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]))


def single_moves_improve(g, p, gamma=1.0, tol=1e-12):
    """True if moving any one node to any other community (or alone) raises Q."""
    base = quality(g, p, gamma)
    labels = np.asarray(p.assignment)
    for u in range(g.n):
        for c in list(range(p.k)) + [p.k]:
            if c == labels[u]:
                continue
            trial = labels.copy()
            trial[u] = c
            if quality(g, Partition.from_labels(trial), gamma) > base + tol:
                return True
    return False


# ---- resolution and config

def test_parse_resolution():
    assert parse_resolution("paper") == 0.05
    assert parse_resolution("1.5") == 1.5
    assert parse_resolution(2) == 2.0
    for bad in ("0", "-1", "abc", 0.0):
        with pytest.raises(InputError):
            parse_resolution(bad)


def test_config_validation():
    assert ClusteringConfig(gamma="paper").gamma == 0.05
    with pytest.raises(InputError):
        ClusteringConfig(theta=0)
    assert ClusteringConfig().with_(seed=3).seed == 3


# ---- quality

def test_quality_examples(g7):
    assert quality(g7, OPT_A) == 0.3671875
    assert quality(g7, Partition.singletons(7)) == -0.1484375
    assert quality(g7, Partition.whole(7)) == 0.0
    assert quality(g7, Partition.whole(7), 0.05) == pytest.approx(0.95, abs=1e-15)


def test_quality_needs_cover(g7):
    with pytest.raises(InputError):
        quality(g7, Partition.whole(6))


def test_quality_edgeless_rejected():
    g = Graph.from_edges(np.array([], dtype=np.int64), np.array([], dtype=np.int64), n=3)
    with pytest.raises(InputError):
        quality(g, Partition.whole(3))


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 9), st.floats(0.05, 0.9), st.floats(0.05, 3.0), st.integers(0, 2**31))
def test_quality_matches_pairwise_definition(n, p, gamma, seed):
    rng = np.random.default_rng(seed)
    g = random_connected_graph(n, p, rng)
    labels = rng.integers(0, n, size=n)
    part = Partition.from_labels(labels)
    assert quality(g, part, gamma) == pytest.approx(brute_quality(dense_adjacency(g), labels, gamma), abs=1e-12)


def test_enumerated_optimum_f7(g7):
    adj = dense_adjacency(g7)
    scores = [(brute_quality(adj, p), tuple(p)) for p in set_partitions(7)]
    assert len(scores) == 877
    best = max(s for s, _ in scores)
    assert best == pytest.approx(0.3671875, abs=1e-15)
    winners = {p for s, p in scores if s > best - 1e-12}
    assert winners == {(0, 0, 0, 1, 1, 1, 1), (0, 0, 0, 0, 1, 1, 1)}
    assert best_quality(adj, 0.05) == pytest.approx(0.95)


# ---- local moving

@pytest.mark.parametrize("seed", range(5))
def test_local_move_from_singletons_is_locally_optimal(g7, seed):
    p, improved = local_move(g7, Partition.singletons(7), seed=seed)
    assert improved
    assert quality(g7, p) >= 0.3515625 - 1e-12
    assert not single_moves_improve(g7, p)


def test_local_move_from_optimum_is_stable(g7):
    p, improved = local_move(g7, OPT_A)
    assert not improved and p == OPT_A


def test_local_move_single_edge():
    g = build_graph(EdgeList.from_pairs([(0, 1)]))
    assert quality(g, Partition.singletons(2)) == -0.5
    p, improved = local_move(g, Partition.singletons(2))
    assert improved and p.k == 1 and quality(g, p) == 0.0


def test_local_move_can_leave_to_empty_community(g7):
    # at gamma=2 the whole graph is a poor community, and every node's only
    # neighboring community is its own, so progress needs the empty option
    start = Partition.whole(7)
    p, improved = local_move(g7, start, gamma=2.0)
    assert improved and p.k > 1
    assert quality(g7, p, 2.0) > quality(g7, start, 2.0)
    assert not single_moves_improve(g7, p, 2.0)


def test_leiden_iterations_never_lower_quality():
    rng = np.random.default_rng(21)
    for _ in range(10):
        g = random_connected_graph(int(rng.integers(20, 60)), 0.15, rng)
        one = run_leiden(g, ClusteringConfig(seed=3, max_iterations=1))
        many = run_leiden(g, ClusteringConfig(seed=3))
        assert many.quality >= one.quality - 1e-12
        assert many.iterations >= 1


# ---- aggregation

def test_aggregate_f7(g7):
    h = aggregate(g7, OPT_A)
    assert h.n == 2
    assert h.self_weight.tolist() == [3.0, 4.0]
    assert h.edge_weight(0, 1) == 1.0
    assert quality(h, Partition.singletons(2)) == quality(g7, OPT_A)


def test_aggregate_singletons_and_whole(g7):
    h = aggregate(g7, Partition.singletons(7))
    assert np.array_equal(h.indptr, g7.indptr) and np.array_equal(h.indices, g7.indices)
    assert not h.self_weight.any()
    w = aggregate(g7, Partition.whole(7))
    assert w.n == 1 and w.self_weight.tolist() == [8.0] and w.m == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 30), st.integers(0, 2**31), st.floats(0.1, 2.5))
def test_aggregation_preserves_quality(n, seed, gamma):
    rng = np.random.default_rng(seed)
    g = random_connected_graph(n, 0.2, rng)
    fine = Partition.from_labels(rng.integers(0, max(1, n // 2), size=n))
    h = aggregate(g, fine)
    coarse = Partition.from_labels(rng.integers(0, max(1, h.n // 2), size=h.n))
    lifted = Partition.from_labels(np.asarray(coarse.assignment)[fine.assignment])
    assert quality(h, coarse, gamma) == pytest.approx(quality(g, lifted, gamma), abs=1e-12)
    assert quality(h, Partition.singletons(h.n), gamma) == pytest.approx(quality(g, fine, gamma), abs=1e-12)


# ---- Louvain and Leiden

@pytest.mark.parametrize("algo", [louvain, leiden])
@pytest.mark.parametrize("seed", [0, 1, 2, 3, 42])
def test_f7_optimum(g7, algo, seed):
    p = algo(g7, ClusteringConfig(seed=seed))
    assert p.k == 2
    assert p.same_grouping(OPT_A) or p.same_grouping(OPT_B)
    assert quality(g7, p) == 0.3671875


@pytest.mark.parametrize("algo", [louvain, leiden])
def test_low_resolution_single_cluster(g7, algo):
    p = algo(g7, ClusteringConfig(gamma=0.05))
    assert p.k == 1
    assert quality(g7, p, 0.05) == pytest.approx(0.95)


@pytest.mark.parametrize("algo", [louvain, leiden])
def test_triangle_single_cluster(algo):
    assert best_quality(dense_adjacency(TRIANGLE)) == pytest.approx(0.0, abs=1e-12)
    assert algo(TRIANGLE).k == 1


def test_leiden_disconnected_triangles():
    p = leiden(TWO_TRIANGLES)
    assert p.same_grouping(Partition.from_labels([0, 0, 0, 1, 1, 1]))


def test_leiden_sbm_purity():
    g, blocks = stochastic_block_model([100, 100], 0.25, 0.01, seed=7)
    p = leiden(g)
    assert p.k == 2
    rows = cluster_purity(p, LabelMap.from_sequence([str(b) for b in blocks]))
    assert all(r.purity >= 0.95 for r in rows)


@pytest.mark.parametrize("run", [run_louvain, run_leiden])
def test_traces_non_decreasing(run):
    rng = np.random.default_rng(11)
    for _ in range(10):
        g = random_connected_graph(int(rng.integers(10, 80)), 0.1, rng)
        res = run(g, ClusteringConfig(seed=int(rng.integers(1000))), trace_sweeps=True)
        assert np.all(np.diff(res.level_qualities) >= -1e-12)
        for sweeps in res.sweep_qualities:
            assert np.all(np.diff(sweeps) >= -1e-12)
        assert res.quality == pytest.approx(quality(g, res.partition))


def test_leiden_communities_connected():
    rng = np.random.default_rng(5)
    for _ in range(10):
        g = random_connected_graph(int(rng.integers(20, 120)), 0.05, rng)
        for gamma in (0.05, 1.0, 2.0):
            p = leiden(g, ClusteringConfig(gamma=gamma, seed=1))
            assert all(is_connected_subset(g, c) for c in p.communities())


def test_same_seed_same_result():
    g, _ = stochastic_block_model([60, 60, 60], 0.2, 0.02, seed=1)
    for algo in (louvain, leiden):
        a = algo(g, ClusteringConfig(seed=9))
        b = algo(g, ClusteringConfig(seed=9))
        assert np.array_equal(a.assignment, b.assignment)


def test_edgeless_graph_rejected():
    g = Graph.from_edges(np.array([], dtype=np.int64), np.array([], dtype=np.int64), n=2)
    with pytest.raises(InputError):
        louvain(g)


# ---- spectral

def test_laplacian_matches_dense(g7):
    a = dense_adjacency(g7)
    d = a.sum(axis=1)
    want = np.eye(7) - a / np.sqrt(np.outer(d, d))
    assert np.allclose(normalized_laplacian(g7).toarray(), want)


def test_embedding_matches_dense_eigh():
    g, _ = stochastic_block_model([40, 40, 40], 0.3, 0.02, seed=2)
    emb = spectral_embedding(g, 3)
    vals = np.linalg.eigvalsh(normalized_laplacian(g).toarray())
    assert np.allclose(emb.eigenvalues, vals[:3], atol=1e-8)
    assert emb.residuals.max() <= 1e-6


def test_spectral_f7(g7):
    p = spectral_cluster(g7, 2)
    assert p.same_grouping(OPT_A) or p.same_grouping(OPT_B)


def test_spectral_bridged_triangles():
    p = spectral_cluster(BRIDGED, 2)
    assert p.same_grouping(Partition.from_labels([0, 0, 0, 1, 1, 1]))


def test_spectral_refuses_over_cap():
    n = 60_001
    src = np.arange(n - 1)
    g = Graph.from_edges(src, src + 1, n=n)
    with pytest.raises(RefusalError, match="50000"):
        spectral_cluster(g, 2)


def test_spectral_input_checks(g7):
    with pytest.raises(InputError):
        spectral_cluster(g7, 1)
    with pytest.raises(InputError, match="connected"):
        spectral_cluster(TWO_TRIANGLES, 2)


def test_kmeans_examples():
    assert kmeans([0, 0.1, 10, 10.1], 2).tolist() == [0, 0, 1, 1]
    assert kmeans([0, 0, 1, 1], 2).tolist() == [0, 0, 1, 1]
    pts = np.arange(5.0)
    labels = kmeans(pts, 5)
    assert sorted(labels.tolist()) == [0, 1, 2, 3, 4]
    assert kmeans_inertia(pts, labels) == 0.0


def test_kmeans_beats_enumeration_bound():
    # on 8 points, the best of all 2-partitions is the oracle
    rng = np.random.default_rng(4)
    pts = rng.normal(size=(8, 2))
    best = min(kmeans_inertia(pts, p) for p in set_partitions(8) if max(p) == 1)
    assert kmeans_inertia(pts, kmeans(pts, 2)) == pytest.approx(best)
