import numpy as np
import pytest

from citenet.errors import InputError
from citenet.generators import F7_EDGES, f7, random_connected_graph, stochastic_block_model
from citenet.partition import Partition, read_partition, relabel_first_seen, write_partition


def test_relabel_first_seen():
    labels, k = relabel_first_seen([7, 3, 7, 9, 3])
    assert labels.tolist() == [0, 1, 0, 2, 1] and k == 3


def test_partition_validation():
    with pytest.raises(InputError):
        Partition(np.array([0, 2]), 3)
    with pytest.raises(InputError):
        Partition(np.array([0, 1]), 1)


def test_partition_views():
    p = Partition.from_blocks([[0, 1, 2], [3, 4, 5, 6]])
    assert p.sizes().tolist() == [3, 4]
    assert [c.tolist() for c in p.communities()] == [[0, 1, 2], [3, 4, 5, 6]]
    assert p.members(1).tolist() == [3, 4, 5, 6]
    assert p.same_grouping(Partition.from_labels([5, 5, 5, 1, 1, 1, 1]))
    with pytest.raises(InputError, match="two blocks"):
        Partition.from_blocks([[0, 1], [1]])


def test_partition_round_trip(tmp_path):
    p = Partition.from_labels([0, 0, 1, 2, 1])
    write_partition(p, tmp_path / "p.tsv")
    assert (tmp_path / "p.tsv").read_text() == "0\t0\n1\t0\n2\t1\n3\t2\n4\t1\n"
    assert read_partition(tmp_path / "p.tsv") == p


@pytest.mark.parametrize("text, fragment", [
    (b"0\t0\n1\t0\n7\t1\n", "node 7"),
    (b"0\t0\n2\t0\n", "node 1 has no community"),
    (b"0\t0\n0\t1\n1\t0\n", "node 0 assigned twice"),
    (b"0 x\n", "line 1"),
])
def test_read_partition_errors(text, fragment):
    with pytest.raises(InputError, match=fragment):
        read_partition(text, n=3)


def test_f7_fixture():
    g = f7()
    lo, hi, _ = g.edges()
    assert list(zip(lo.tolist(), hi.tolist())) == list(F7_EDGES)


def test_sbm_structure():
    g, blocks = stochastic_block_model([30, 20], 1.0, 0.0, seed=0)
    assert g.m == 30 * 29 // 2 + 20 * 19 // 2
    assert blocks.tolist() == [0] * 30 + [1] * 20
    g, _ = stochastic_block_model([30, 20], 0.0, 1.0, seed=0)
    assert g.m == 600
    lo, hi, _ = g.edges()
    assert (lo < 30).all() and (hi >= 30).all()


def test_sbm_edge_density():
    # expected counts: within 2 * C(500,2) * 0.02 = 4990, between 250000 * 0.001 = 250
    g, blocks = stochastic_block_model([500, 500], 0.02, 0.001, seed=7)
    lo, hi, _ = g.edges()
    within = int((blocks[lo] == blocks[hi]).sum())
    between = g.m - within
    assert abs(within - 4990) < 5 * np.sqrt(4990)
    assert abs(between - 250) < 5 * np.sqrt(250)


def test_sbm_seeded():
    a, _ = stochastic_block_model([50, 50], 0.1, 0.01, seed=3)
    b, _ = stochastic_block_model([50, 50], 0.1, 0.01, seed=3)
    assert np.array_equal(a.indices, b.indices)


def test_triangular_decode_exhaustive():
    # drawing every pair must reproduce the complete graph exactly
    g, _ = stochastic_block_model([200], 1.0, 0.0, seed=1)
    assert g.m == 200 * 199 // 2
    assert (g.degree == 199).all()


def test_random_connected_graph():
    from citenet._kernels import component_labels

    rng = np.random.default_rng(0)
    for _ in range(30):
        g = random_connected_graph(int(rng.integers(1, 30)), 0.05, rng)
        _, ncomp = component_labels(np.asarray(g.indptr), np.asarray(g.indices))
        assert ncomp == 1
