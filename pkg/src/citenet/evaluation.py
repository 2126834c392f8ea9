"""Scoring a partition: sizes, link matrix, label fragmentation, purity.

Also holds the small-cluster merge heuristic and the CSV report writer.
Unlabeled nodes are counted under the reserved label ``UNLABELED`` so
every node and edge is accounted for.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import InputError
from .graph import Graph, LabelMap
from .partition import Partition, check_covers, relabel_first_seen

UNLABELED = "∅"
MAX_DENSE_CLUSTERS = 4096


def percent(fraction: float) -> str:
    return f"{100.0 * fraction:.2f}%"


def cluster_sizes(p: Partition) -> list[tuple[int, int]]:
    """(cluster id, size) sorted by size descending, then id ascending."""
    sizes = p.sizes()
    order = np.lexsort((np.arange(p.k), -sizes))
    return [(int(c), int(sizes[c])) for c in order]


@dataclass(frozen=True, eq=False)
class LinkMatrix:
    """Symmetric edge counts between clusters; the diagonal holds intra-cluster edges."""

    counts: np.ndarray

    @property
    def k(self) -> int:
        return len(self.counts)

    @property
    def total(self) -> int:
        return int(np.triu(self.counts).sum())

    @property
    def intra(self) -> int:
        return int(np.trace(self.counts))

    def top(self, n: int, sizes=None) -> "LinkMatrix":
        """Sub-matrix over the n largest clusters (by ``sizes``, default by id)."""
        ids = np.arange(self.k) if sizes is None else np.array([c for c, _ in sizes])
        ids = ids[:n]
        return LinkMatrix(self.counts[np.ix_(ids, ids)])


def link_matrix(g: Graph, p: Partition) -> LinkMatrix:
    check_covers(p, g.n)
    if p.k > MAX_DENSE_CLUSTERS:
        raise InputError(f"{p.k} clusters is too many for a dense link matrix (limit {MAX_DENSE_CLUSTERS})")
    lo, hi, _ = g.edges()
    return LinkMatrix(_pair_counts(p.assignment[lo], p.assignment[hi], p.k))


def _pair_counts(a: np.ndarray, b: np.ndarray, k: int) -> np.ndarray:
    """Symmetric k x k counts of undirected (a[i], b[i]) pairs."""
    flat = np.bincount(a * k + b, minlength=k * k).reshape(k, k)
    counts = flat + flat.T
    counts[np.diag_indices(k)] //= 2
    return counts.astype(np.int64)


@dataclass(frozen=True)
class LinkSummary:
    intra: int
    inter: int
    intra_fraction: float

    @property
    def total(self) -> int:
        return self.intra + self.inter

    def __str__(self):
        return (f"intra={self.intra} inter={self.inter} total={self.total} "
                f"intra_fraction={percent(self.intra_fraction)} "
                f"inter_fraction={percent(1.0 - self.intra_fraction)}")


def link_summary(lm: LinkMatrix) -> LinkSummary:
    if lm.k == 0 or lm.total == 0:
        raise InputError("empty link matrix")
    intra = lm.intra
    return LinkSummary(intra, lm.total - intra, intra / lm.total)


def _label_columns(labels: LabelMap, n: int) -> tuple[np.ndarray, tuple[str, ...]]:
    if labels.n != n:
        raise InputError(f"labels cover {labels.n} nodes but graph has n={n}")
    codes = np.asarray(labels.codes)
    names = labels.label_universe
    if (codes < 0).any():
        codes = np.where(codes < 0, len(names), codes)
        names = names + (UNLABELED,)
    return codes, names


@dataclass(frozen=True, eq=False)
class LabelLinkCensus:
    """Edge counts between label pairs (symmetric, diagonal = same label)."""

    labels: tuple[str, ...]
    counts: np.ndarray

    def count(self, a: str, b: str) -> int:
        i, j = self.labels.index(a), self.labels.index(b)
        return int(self.counts[i, j])

    @property
    def internal(self) -> int:
        return int(np.trace(self.counts))

    @property
    def external(self) -> int:
        return int(np.triu(self.counts, 1).sum())

    def pairs(self) -> dict[tuple[str, str], int]:
        out = {}
        for i, a in enumerate(self.labels):
            for j in range(i, len(self.labels)):
                out[(a, self.labels[j])] = int(self.counts[i, j])
        return out


def label_link_census(g: Graph, labels: LabelMap) -> LabelLinkCensus:
    codes, names = _label_columns(labels, g.n)
    lo, hi, _ = g.edges()
    return LabelLinkCensus(names, _pair_counts(codes[lo], codes[hi], len(names)))


def contingency(p: Partition, labels: LabelMap) -> tuple[np.ndarray, tuple[str, ...]]:
    """Cluster x label node counts."""
    codes, names = _label_columns(labels, p.n)
    L = len(names)
    table = np.bincount(p.assignment * L + codes, minlength=p.k * L).reshape(p.k, L)
    return table, names


@dataclass(frozen=True)
class FragmentationRow:
    label: str
    total: int
    n_clusters: int
    dominant_cluster: int
    concentration: float


@dataclass(frozen=True)
class PurityRow:
    cluster: int
    size: int
    dominant_label: str
    purity: float


def label_fragmentation(p: Partition, labels: LabelMap) -> list[FragmentationRow]:
    """Per label: clusters touched and share held by the dominant cluster."""
    table, names = contingency(p, labels)
    rows = []
    for j, name in enumerate(names):
        col = table[:, j]
        total = int(col.sum())
        if total == 0:
            continue
        dom = int(np.argmax(col))  # first max = lowest cluster id
        rows.append(FragmentationRow(name, total, int((col > 0).sum()), dom, float(col[dom] / total)))
    return rows


def cluster_purity(p: Partition, labels: LabelMap) -> list[PurityRow]:
    """Per cluster: most common label (lexicographic on ties) and its share."""
    table, names = contingency(p, labels)
    by_name = np.argsort(np.array(names, dtype=object), kind="stable")
    rows = []
    for c in range(p.k):
        counts = table[c, by_name]
        j = int(by_name[int(np.argmax(counts))])
        size = int(table[c].sum())
        rows.append(PurityRow(c, size, names[j], float(table[c, j] / size)))
    return rows


def weighted_purity(rows: list[PurityRow]) -> float:
    """Size-weighted mean purity over clusters."""
    n = sum(r.size for r in rows)
    return sum(r.purity * r.size for r in rows) / n


@dataclass
class MergeResult:
    partition: Partition
    merges: list[tuple[int, int]] = field(default_factory=list)
    unmerged: list[tuple[int, str]] = field(default_factory=list)

    def ledger(self) -> list[str]:
        lines = [f"cluster {s} → cluster {t}" for s, t in self.merges]
        lines += [f"cluster {s} unmerged: {why}" for s, why in self.unmerged]
        return lines


def merge_small_clusters(g: Graph, p: Partition, min_size: int) -> MergeResult:
    """Fold every cluster smaller than ``min_size`` into the large cluster
    holding a strict majority of its external edges.

    Small clusters are handled in order of size, then id. Edges to a small
    cluster already folded into a large one count for that large one.
    Clusters with no external edges, a tied or non-majority tally, or a
    majority pointing at another small cluster stay as they are and are
    listed in ``unmerged``. Cluster ids in ``merges`` refer to ``p``.
    """
    check_covers(p, g.n)
    sizes = p.sizes()
    small = [c for c in np.lexsort((np.arange(p.k), sizes)) if sizes[c] < min_size]
    result = MergeResult(p)
    if not small:
        return result

    lo, hi, _ = g.edges()
    a, b = p.assignment[lo], p.assignment[hi]
    cross = a != b
    a, b = a[cross], b[cross]
    # cluster-level adjacency with counts, both directions
    pair_src = np.concatenate([a, b])
    pair_dst = np.concatenate([b, a])
    order = np.argsort(pair_src, kind="stable")
    pair_src, pair_dst = pair_src[order], pair_dst[order]
    starts = np.searchsorted(pair_src, np.arange(p.k + 1))

    owner = np.arange(p.k)
    for s in small:
        s = int(s)
        targets = owner[pair_dst[starts[s]:starts[s + 1]]]
        targets = targets[targets != s]
        if len(targets) == 0:
            result.unmerged.append((s, "no external edges"))
            continue
        tally = np.bincount(targets, minlength=p.k)
        best = int(np.argmax(tally))
        top = tally[best]
        if (tally == top).sum() > 1:
            result.unmerged.append((s, "tied external edges"))
        elif 2 * top <= len(targets):
            result.unmerged.append((s, "no strict majority of external edges"))
        elif sizes[best] < min_size:
            result.unmerged.append((s, f"majority goes to small cluster {best}"))
        else:
            owner[s] = best
            result.merges.append((s, best))
    labels, _ = relabel_first_seen(owner[p.assignment])
    result.partition = Partition.from_labels(labels)
    return result


@dataclass
class ClusterReport:
    sizes: list[tuple[int, int]]
    link_matrix: LinkMatrix
    summary: LinkSummary
    fragmentation: list[FragmentationRow] | None = None
    purity: list[PurityRow] | None = None

    @property
    def intra_fraction(self) -> float:
        return self.summary.intra_fraction


def build_report(g: Graph, p: Partition, labels: LabelMap | None = None) -> ClusterReport:
    lm = link_matrix(g, p)
    report = ClusterReport(cluster_sizes(p), lm, link_summary(lm))
    if labels is not None:
        report.fragmentation = label_fragmentation(p, labels)
        report.purity = cluster_purity(p, labels)
    return report


def _fmt(x: float) -> str:
    """Four decimals with trailing zeros trimmed: 0.75, 1, 0.4286."""
    return f"{x:.4f}".rstrip("0").rstrip(".")


def write_report(report: ClusterReport, out_dir) -> list[Path]:
    """Write the CSV/TXT report files; returns the paths written."""
    out = Path(out_dir)
    os.makedirs(out, exist_ok=True)
    written = []

    def _csv(name, header, rows):
        path = out / name
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            if header:
                w.writerow(header)
            w.writerows(rows)
        written.append(path)

    _csv("sizes.csv", ["cluster_id", "size"], report.sizes)
    _csv("link_matrix.csv", None, report.link_matrix.counts.tolist())
    s = report.summary
    path = out / "summary.txt"
    path.write_text(
        f"intra_links={s.intra}\ninter_links={s.inter}\ntotal_links={s.total}\n"
        f"intra_fraction={percent(s.intra_fraction)}\ninter_fraction={percent(1.0 - s.intra_fraction)}\n"
        f"clusters={len(report.sizes)}\n",
        encoding="utf-8")
    written.append(path)
    if report.fragmentation is not None:
        _csv("fragmentation.csv", ["label", "total", "n_clusters", "dominant_cluster", "concentration"],
             [(r.label, r.total, r.n_clusters, r.dominant_cluster, _fmt(r.concentration))
              for r in report.fragmentation])
    if report.purity is not None:
        _csv("purity.csv", ["cluster_id", "size", "dominant_label", "purity"],
             [(r.cluster, r.size, r.dominant_label, _fmt(r.purity))
              for r in report.purity])
    return written
