"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the package's kernels: modularity is
computed from the pairwise definition over an explicit adjacency matrix,
and optimal partitions come from enumerating every set partition.
"""

import numpy as np
import pytest

from citenet.generators import F7_EDGES, F7_LABELS, f7
from citenet.graph import Graph, LabelMap


def brute_quality(adj: np.ndarray, labels, gamma: float = 1.0) -> float:
    """Q = 1/(2m) * sum_ij [A_ij - gamma k_i k_j / 2m] delta(c_i, c_j).

    ``adj`` is symmetric; a self-loop of weight w sits on the diagonal as 2w
    so that row sums are strengths.
    """
    labels = np.asarray(labels)
    k = adj.sum(axis=1)
    two_m = k.sum()
    same = labels[:, None] == labels[None, :]
    return float(((adj - gamma * np.outer(k, k) / two_m) * same).sum() / two_m)


def dense_adjacency(g: Graph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u in range(g.n):
        for v in g.neighbors(u):
            a[u, v] = g.edge_weight(u, int(v))
        a[u, u] = 2.0 * g.self_weight[u]
    return a


def set_partitions(n: int):
    """Every partition of range(n) as a restricted-growth label list."""
    def grow(prefix, top):
        if len(prefix) == n:
            yield list(prefix)
            return
        for c in range(top + 2):
            yield from grow(prefix + [c], max(top, c))
    if n == 0:
        yield []
        return
    yield from grow([0], 0)


def best_quality(adj: np.ndarray, gamma: float = 1.0) -> float:
    return max(brute_quality(adj, p, gamma) for p in set_partitions(len(adj)))


def is_connected_subset(g: Graph, nodes) -> bool:
    nodes = set(int(x) for x in nodes)
    start = next(iter(nodes))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in g.neighbors(u):
            v = int(v)
            if v in nodes and v not in seen:
                seen.add(v)
                stack.append(v)
    return seen == nodes


def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


ACCEPTANCE_LINES = []


def record_criterion(number: int, passed: bool, detail: str) -> str:
    line = f"{'PASS' if passed else 'FAIL'} criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda x: int(x.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def g7():
    return f7()


@pytest.fixture
def f7_labels():
    return LabelMap.from_sequence(F7_LABELS)


@pytest.fixture
def f7_file(tmp_path):
    path = tmp_path / "f7.txt"
    path.write_text("".join(f"{a} {b}\n" for a, b in F7_EDGES))
    return path


def pairs_text(pairs) -> str:
    return "".join(f"{a} {b}\n" for a, b in pairs)

