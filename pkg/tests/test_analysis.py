from collections import deque

import numpy as np
import pytest

from citenet.analysis import (
    bfs_distances,
    degree_stats,
    mean_degree,
    neighborhood_census,
    reach_profile,
    top_degree_nodes,
)
from citenet.errors import InputError
from citenet.generators import random_connected_graph
from citenet.graph import EdgeList, build_graph

STAR4 = build_graph(EdgeList.from_pairs([(0, 1), (0, 2), (0, 3)]))
TRIANGLE = build_graph(EdgeList.from_pairs([(0, 1), (1, 2), (0, 2)]))


def bfs_oracle(g, root):
    dist = {root: 0}
    q = deque([root])
    while q:
        u = q.popleft()
        for v in g.neighbors(u):
            v = int(v)
            if v not in dist:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def test_degree_stats_f7(g7):
    st = degree_stats(g7)
    assert (st.min, st.max, st.median) == (2, 3, 2)
    assert st.mean == pytest.approx(16 / 7)
    assert st.histogram == {2: 5, 3: 2}
    assert st.summary() == "min=2 max=3 mean=2.29 median=2"


def test_degree_stats_single_edge():
    st = degree_stats(build_graph(EdgeList.from_pairs([(0, 1)])))
    assert (st.min, st.max, st.mean, st.median) == (1, 1, 1.0, 1.0)


def test_mean_degree_reported_figure():
    assert round(mean_degree(698_135, 4_590_190), 2) == 13.15


def test_top_degree(g7):
    assert top_degree_nodes(g7, 2) == [(2, 3), (4, 3)]
    assert top_degree_nodes(g7, 1) == [(2, 3)]
    assert top_degree_nodes(STAR4, 1) == [(0, 3)]
    with pytest.raises(InputError):
        top_degree_nodes(g7, 0)


def test_census_examples(g7):
    c = neighborhood_census(STAR4, 0, 1)
    assert (c.n_nodes, c.n_edges) == (4, 3)
    c = neighborhood_census(g7, 0, 2)
    assert (c.n_nodes, c.n_edges) == (4, 4)
    c = neighborhood_census(g7, 0, 0)
    assert (c.n_nodes, c.n_edges) == (1, 0)


def test_reach_profile_examples(g7):
    assert reach_profile(g7, 0, 4).cumulative == (1, 3, 4, 5, 7)
    assert reach_profile(STAR4, 0, 2).cumulative == (1, 4, 4)
    assert reach_profile(TRIANGLE, 0, 3).cumulative == (1, 3, 3, 3)


def test_bad_root(g7):
    with pytest.raises(InputError, match="node 99"):
        neighborhood_census(g7, 99, 2)
    with pytest.raises(InputError):
        reach_profile(g7, -1, 2)


def test_bfs_matches_oracle():
    rng = np.random.default_rng(3)
    for _ in range(20):
        g = random_connected_graph(int(rng.integers(2, 40)), 0.08, rng)
        root = int(rng.integers(g.n))
        want = bfs_oracle(g, root)
        got = bfs_distances(g, root)
        assert {u: int(d) for u, d in enumerate(got) if d >= 0} == want
        depth = int(rng.integers(0, 4))
        census = neighborhood_census(g, root, depth)
        inside = {u for u, d in want.items() if d <= depth}
        lo, hi, _ = g.edges()
        assert census.n_nodes == len(inside)
        assert census.n_edges == sum(1 for a, b in zip(lo, hi) if a in inside and b in inside)
