"""Citation graph ingestion, cleaning and relabeling.

Citations are read as directed ``src dst`` pairs, then stored as an
undirected simple graph in CSR form. Reciprocal citations collapse to a
single edge of weight 1.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from . import _kernels
from .errors import EmptyGraphError, InputError, ParseError


def _read_bytes(source) -> bytes:
    if isinstance(source, (bytes, bytearray, memoryview)):
        return bytes(source)
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            return fh.read()
    data = source.read()
    if isinstance(data, str):
        data = data.encode("utf-8")
    return data


def _open_text_out(dest):
    if isinstance(dest, (str, os.PathLike)):
        return open(dest, "w", encoding="utf-8", newline="\n"), True
    return dest, False


@dataclass(frozen=True, eq=False)
class EdgeList:
    """Directed citation pairs as parsed, with ingestion counters."""

    edges: np.ndarray  # shape (m, 2), int64
    n_declared: int
    n_self_loops_dropped: int = 0
    n_duplicates_dropped: int = 0

    @property
    def src(self) -> np.ndarray:
        return self.edges[:, 0]

    @property
    def dst(self) -> np.ndarray:
        return self.edges[:, 1]

    def __len__(self) -> int:
        return len(self.edges)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "EdgeList":
        """Build from in-memory pairs, applying the same cleaning as the parser."""
        arr = np.asarray(list(pairs), dtype=np.int64).reshape(-1, 2)
        return _clean_pairs(arr[:, 0], arr[:, 1])


def _clean_pairs(src: np.ndarray, dst: np.ndarray) -> EdgeList:
    if len(src) == 0:
        raise EmptyGraphError("empty input")
    if (src < 0).any() or (dst < 0).any():
        raise InputError("node ids must be non-negative integers")
    n_declared = len(np.unique(np.concatenate([src, dst])))
    loops = src == dst
    n_loops = int(loops.sum())
    src, dst = src[~loops], dst[~loops]

    if len(src):
        top = int(max(src.max(), dst.max())) + 1
        if top < (1 << 31):
            _, first = np.unique(src * top + dst, return_index=True)
        else:
            order = np.lexsort((dst, src))
            s, d = src[order], dst[order]
            new = np.ones(len(s), dtype=bool)
            new[1:] = (s[1:] != s[:-1]) | (d[1:] != d[:-1])
            first = order[new]
        first.sort()
    else:
        first = np.empty(0, dtype=np.int64)
    n_dup = len(src) - len(first)
    edges = np.stack([src[first], dst[first]], axis=1)
    return EdgeList(edges, n_declared, n_loops, n_dup)


def parse_edge_list(source) -> EdgeList:
    """Parse ``src dst`` lines from bytes, a path, or a binary stream.

    Self-loops and repeated directed pairs are dropped and counted. Lines
    starting with ``#`` and blank lines are skipped.
    """
    buf = np.frombuffer(_read_bytes(source), dtype=np.uint8)
    src, dst, n_pairs, status, line, ntok = _kernels.parse_pairs(buf)
    if status == _kernels.BAD_TOKEN_COUNT:
        raise ParseError(f"expected 2 tokens, found {ntok}", line)
    if status == _kernels.NOT_AN_INTEGER:
        raise ParseError("node id is not a non-negative integer", line)
    if status == _kernels.OVERFLOW:
        raise ParseError("node id too large", line)
    return _clean_pairs(src[:n_pairs], dst[:n_pairs])


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected weighted graph in CSR form, nodes 0..n-1.

    ``self_weight`` is only nonzero on aggregated graphs, where it holds the
    intra-community weight of the collapsed node. Arrays are read-only.
    """

    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    self_weight: np.ndarray

    def __post_init__(self):
        for arr in (self.indptr, self.indices, self.weights, self.self_weight):
            arr.flags.writeable = False

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        """Number of undirected edges between distinct nodes."""
        return len(self.indices) // 2

    @cached_property
    def degree(self) -> np.ndarray:
        """Neighbor counts (self-loops excluded)."""
        d = np.diff(self.indptr)
        d.flags.writeable = False
        return d

    @cached_property
    def strength(self) -> np.ndarray:
        """Weighted degree; a self-loop of weight w adds 2w."""
        rows = np.repeat(np.arange(self.n), self.degree)
        s = np.bincount(rows, weights=self.weights, minlength=self.n).astype(np.float64)
        s += 2.0 * self.self_weight
        s.flags.writeable = False
        return s

    @cached_property
    def total_weight(self) -> float:
        return float(self.weights.sum() / 2.0 + self.self_weight.sum())

    @property
    def is_weighted(self) -> bool:
        return bool(self.self_weight.any() or (self.weights != 1.0).any())

    def neighbors(self, u: int) -> np.ndarray:
        return self.indices[self.indptr[u]:self.indptr[u + 1]]

    def edge_weight(self, u: int, v: int) -> float:
        if u == v:
            return float(self.self_weight[u])
        nb = self.neighbors(u)
        j = np.searchsorted(nb, v)
        if j < len(nb) and nb[j] == v:
            return float(self.weights[self.indptr[u] + j])
        return 0.0

    def edges(self):
        """Undirected edges as arrays (lo, hi, weight) with lo < hi, lexicographic."""
        rows = np.repeat(np.arange(self.n), self.degree)
        upper = rows < self.indices
        return rows[upper], self.indices[upper], self.weights[upper]

    @classmethod
    def from_edges(cls, src, dst, n: int | None = None, weights=None) -> "Graph":
        """Undirected graph from endpoint arrays.

        Parallel edges are merged. Unweighted input (``weights=None``) keeps
        weight 1 per merged pair; weighted input sums weights, and loops go
        to ``self_weight``.
        """
        src = np.asarray(src, dtype=np.int64)
        dst = np.asarray(dst, dtype=np.int64)
        if n is None:
            n = int(max(src.max(), dst.max())) + 1 if len(src) else 0
        w = None if weights is None else np.asarray(weights, dtype=np.float64)
        self_w = np.zeros(n, dtype=np.float64)
        loops = src == dst
        if loops.any():
            if w is not None:
                np.add.at(self_w, src[loops], w[loops])
                w = w[~loops]
            src, dst = src[~loops], dst[~loops]
        lo = np.minimum(src, dst)
        hi = np.maximum(src, dst)
        key = lo * n + hi
        uniq, inv = np.unique(key, return_inverse=True)
        if w is None:
            uw = np.ones(len(uniq), dtype=np.float64)
        else:
            uw = np.bincount(inv.ravel(), weights=w, minlength=len(uniq))
        indptr, indices, wts = _kernels.csr_from_sorted_pairs(n, uniq // n, uniq % n, uw)
        return cls(indptr, indices, wts, self_w)

    def induced(self, keep: np.ndarray) -> tuple["Graph", "NodeMapping"]:
        """Subgraph on the boolean mask ``keep``, relabeled preserving order."""
        keep = np.asarray(keep, dtype=bool)
        new_id = np.full(self.n, -1, dtype=np.int64)
        kept = np.flatnonzero(keep)
        new_id[kept] = np.arange(len(kept))
        indptr, indices, weights = _kernels.induced_subgraph(
            np.asarray(self.indptr), np.asarray(self.indices), np.asarray(self.weights), new_id
        )
        g = Graph(indptr, indices, weights, np.array(self.self_weight[kept], dtype=np.float64))
        return g, NodeMapping(kept, self.n)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m}, total_weight={self.total_weight:g})"


def build_graph(edges: EdgeList) -> Graph:
    """Undirected simple graph from parsed citations; n = max id + 1."""
    if len(edges) == 0:
        raise EmptyGraphError("no edges")
    return Graph.from_edges(edges.src, edges.dst)


@dataclass(frozen=True, eq=False)
class NodeMapping:
    """Relabeling between an original id space and consecutive new ids."""

    new_to_old: np.ndarray
    n_old: int

    @cached_property
    def old_to_new(self) -> np.ndarray:
        """Dense array over old ids; -1 where the node was dropped."""
        out = np.full(self.n_old, -1, dtype=np.int64)
        out[self.new_to_old] = np.arange(len(self.new_to_old))
        return out

    @property
    def n_new(self) -> int:
        return len(self.new_to_old)

    @classmethod
    def identity(cls, n: int) -> "NodeMapping":
        return cls(np.arange(n, dtype=np.int64), n)

    def is_identity(self) -> bool:
        return self.n_new == self.n_old and bool((self.new_to_old == np.arange(self.n_old)).all())

    def then(self, later: "NodeMapping") -> "NodeMapping":
        """Mapping equivalent to applying ``self`` and then ``later``."""
        if later.n_old != self.n_new:
            raise InputError("mapping sizes do not chain")
        return NodeMapping(self.new_to_old[later.new_to_old], self.n_old)


def largest_connected_component(g: Graph) -> tuple[Graph, NodeMapping]:
    """Keep the largest component; ties go to the one holding the smallest id."""
    if g.n == 0:
        raise EmptyGraphError("graph has no nodes")
    labels, n_comp = _kernels.component_labels(np.asarray(g.indptr), np.asarray(g.indices))
    if n_comp == 1:
        return g, NodeMapping.identity(g.n)
    # component ids follow smallest member, so argmax picks the tie-break winner
    best = int(np.argmax(np.bincount(labels)))
    return g.induced(labels == best)


def prune_low_degree(g: Graph, k: int = 1, iterative: bool = False) -> tuple[Graph, NodeMapping]:
    """Drop nodes of degree <= k.

    One pass uses degrees of the input graph; ``iterative`` repeats until
    every remaining node has degree > k.
    """
    if k < 0:
        raise InputError("degree threshold must be >= 0")
    mapping = NodeMapping.identity(g.n)
    while True:
        keep = g.degree > k
        if not keep.any():
            raise EmptyGraphError(f"all nodes pruned at degree threshold {k}")
        if keep.all():
            return g, mapping
        g, step = g.induced(keep)
        mapping = mapping.then(step)
        if not iterative:
            return g, mapping


@dataclass(frozen=True, eq=False)
class LabelMap:
    """Ground-truth field label per node; code -1 marks unlabeled nodes."""

    codes: np.ndarray
    label_universe: tuple[str, ...]

    @property
    def n(self) -> int:
        return len(self.codes)

    @property
    def n_labeled(self) -> int:
        return int((self.codes >= 0).sum())

    def __len__(self):
        return self.n_labeled

    def __getitem__(self, node: int) -> str | None:
        c = self.codes[node]
        return None if c < 0 else self.label_universe[c]

    @property
    def labels(self) -> dict[int, str]:
        return {int(i): self.label_universe[c] for i, c in enumerate(self.codes) if c >= 0}

    @classmethod
    def from_mapping(cls, labels: Mapping[int, str], n: int) -> "LabelMap":
        universe = tuple(sorted(set(labels.values())))
        index = {lab: i for i, lab in enumerate(universe)}
        codes = np.full(n, -1, dtype=np.int64)
        for node, lab in labels.items():
            if not 0 <= node < n:
                raise InputError(f"node id {node} out of range for graph with n={n}")
            codes[node] = index[lab]
        return cls(codes, universe)

    @classmethod
    def from_sequence(cls, labels) -> "LabelMap":
        """One label per node, in node order (``None`` for unlabeled)."""
        return cls.from_mapping({i: lab for i, lab in enumerate(labels) if lab is not None}, len(labels))


def load_labels(source, g: Graph) -> LabelMap:
    """Read ``node_id<TAB>label`` lines for the nodes of ``g``."""
    text = _read_bytes(source).decode("utf-8-sig")
    labels: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[1].strip():
            raise ParseError("expected node_id<TAB>label", lineno)
        node_tok, label = parts[0].strip(), parts[1].strip()
        if not node_tok.isdigit():
            raise ParseError(f"bad node id {node_tok!r}", lineno)
        node = int(node_tok)
        if node >= g.n:
            raise InputError(f"line {lineno}: node id {node} out of range for graph with n={g.n}")
        if labels.get(node, label) != label:
            raise InputError(f"line {lineno}: node {node} has conflicting labels {labels[node]!r} and {label!r}")
        labels[node] = label
    return LabelMap.from_mapping(labels, g.n)


def _write_lines(dest, first: np.ndarray, second: np.ndarray, sep: str, chunk: int = 1 << 20):
    fh, close = _open_text_out(dest)
    try:
        for start in range(0, len(first), chunk):
            a = first[start:start + chunk].tolist()
            b = second[start:start + chunk].tolist()
            fh.write("".join(f"{x}{sep}{y}\n" for x, y in zip(a, b)))
    finally:
        if close:
            fh.close()


def write_edge_list(g: Graph, dest) -> None:
    """Write each undirected edge once as ``lo hi``."""
    lo, hi, _ = g.edges()
    _write_lines(dest, lo, hi, " ")


def write_mapping(mapping: NodeMapping, dest) -> None:
    """Write ``new_id<TAB>old_id`` lines."""
    _write_lines(dest, np.arange(mapping.n_new), mapping.new_to_old, "\t")


def read_mapping(source) -> NodeMapping:
    text = _read_bytes(source).decode("utf-8")
    rows = [line.split("\t") for line in text.splitlines() if line.strip()]
    new = np.array([int(r[0]) for r in rows], dtype=np.int64)
    old = np.array([int(r[1]) for r in rows], dtype=np.int64)
    if not (new == np.arange(len(new))).all():
        raise InputError("mapping file must list new ids 0..n-1 in order")
    return NodeMapping(old, int(old.max()) + 1 if len(old) else 0)


def graph_to_text(g: Graph) -> str:
    buf = io.StringIO()
    write_edge_list(g, buf)
    return buf.getvalue()
