"""Hard partitions of graph nodes into communities."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .graph import _open_text_out, _read_bytes


def relabel_first_seen(labels) -> tuple[np.ndarray, int]:
    """Map arbitrary labels to 0..k-1 in order of first appearance."""
    labels = np.asarray(labels)
    if len(labels) == 0:
        return np.empty(0, dtype=np.int64), 0
    uniq, first, inv = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(len(uniq), dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(len(uniq))
    return rank[inv.ravel()], len(uniq)


@dataclass(frozen=True, eq=False)
class Partition:
    """Node -> community id, ids consecutive in 0..k-1, none empty."""

    assignment: np.ndarray
    k: int

    def __post_init__(self):
        a = self.assignment
        if a.ndim != 1:
            raise InputError("assignment must be one-dimensional")
        if len(a) and (a.min() < 0 or a.max() >= self.k):
            raise InputError("community ids must lie in 0..k-1")
        if len(a) and (np.bincount(a, minlength=self.k) == 0).any():
            raise InputError("community ids must be consecutive (no empty communities)")
        a.flags.writeable = False

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        a, k = relabel_first_seen(labels)
        return cls(a, k)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(np.arange(n, dtype=np.int64), n)

    @classmethod
    def whole(cls, n: int) -> "Partition":
        return cls(np.zeros(n, dtype=np.int64), 1 if n else 0)

    @classmethod
    def from_blocks(cls, blocks) -> "Partition":
        """From an iterable of node collections, numbered by first appearance."""
        pairs = [(u, b) for b, nodes in enumerate(blocks) for u in nodes]
        n = max(u for u, _ in pairs) + 1
        labels = np.full(n, -1, dtype=np.int64)
        for u, b in pairs:
            if labels[u] >= 0:
                raise InputError(f"node {u} appears in two blocks")
            labels[u] = b
        if (labels < 0).any():
            raise InputError(f"node {int(np.flatnonzero(labels < 0)[0])} not assigned")
        return cls.from_labels(labels)

    @property
    def n(self) -> int:
        return len(self.assignment)

    def sizes(self) -> np.ndarray:
        return np.bincount(self.assignment, minlength=self.k)

    def members(self, c: int) -> np.ndarray:
        return np.flatnonzero(self.assignment == c)

    def communities(self) -> list[np.ndarray]:
        order = np.argsort(self.assignment, kind="stable")
        return np.split(order, np.cumsum(self.sizes())[:-1])

    def same_grouping(self, other: "Partition") -> bool:
        """True when both partitions group nodes identically, ignoring ids."""
        if self.n != other.n or self.k != other.k:
            return False
        a, _ = relabel_first_seen(self.assignment)
        b, _ = relabel_first_seen(other.assignment)
        return bool((a == b).all())

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.assignment, other.assignment)

    __hash__ = None

    def __repr__(self):
        return f"Partition(n={self.n}, k={self.k})"


def check_covers(p: Partition, n: int) -> None:
    if p.n != n:
        raise InputError(f"partition covers {p.n} nodes but graph has n={n}")


def write_partition(p: Partition, dest) -> None:
    """Write ``node_id<TAB>community_id`` lines."""
    fh, close = _open_text_out(dest)
    try:
        ids = p.assignment.tolist()
        fh.write("".join(f"{u}\t{c}\n" for u, c in enumerate(ids)))
    finally:
        if close:
            fh.close()


def read_partition(source, n: int | None = None) -> Partition:
    """Read a partition file; with ``n`` given, coverage of 0..n-1 is enforced."""
    text = _read_bytes(source).decode("utf-8")
    nodes, comms = [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 or not parts[0].isdigit() or not parts[1].isdigit():
            raise InputError(f"line {lineno}: expected node_id<TAB>community_id")
        nodes.append(int(parts[0]))
        comms.append(int(parts[1]))
    nodes_a = np.array(nodes, dtype=np.int64)
    size = n if n is not None else (int(nodes_a.max()) + 1 if len(nodes_a) else 0)
    out_of_range = nodes_a[nodes_a >= size]
    if len(out_of_range):
        raise InputError(f"partition lists node {int(out_of_range[0])} but graph has n={size}")
    assignment = np.full(size, -1, dtype=np.int64)
    seen = np.zeros(size, dtype=bool)
    for u, c in zip(nodes, comms):
        if seen[u]:
            raise InputError(f"node {u} assigned twice")
        seen[u] = True
        assignment[u] = c
    missing = np.flatnonzero(~seen)
    if len(missing):
        raise InputError(f"node {int(missing[0])} has no community")
    k = int(assignment.max()) + 1 if size else 0
    return Partition(assignment, k)
