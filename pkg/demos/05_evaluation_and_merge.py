"""Evaluating a clustering against labels, then folding in tiny clusters.

Run: python3 demos/05_evaluation_and_merge.py
"""

import tempfile
from pathlib import Path

from citenet.clustering import quality
from citenet.evaluation import (
    build_report,
    label_link_census,
    link_matrix,
    link_summary,
    merge_small_clusters,
    write_report,
)
from citenet.generators import F7_EDGES, F7_LABELS, f7
from citenet.graph import EdgeList, LabelMap, build_graph
from citenet.partition import Partition

g = f7()
labels = LabelMap.from_sequence(F7_LABELS)   # M, M, M, BOTH, ORMS, ORMS, ORMS
p = Partition.from_labels([0, 0, 0, 1, 1, 1, 1])

print(link_matrix(g, p).counts)              # [[3 1] [1 4]]
print(link_summary(link_matrix(g, p)))
census = label_link_census(g, labels)
print("links between labels:", census.pairs())   # BOTH-BOTH is 0

with tempfile.TemporaryDirectory() as tmp:
    for path in write_report(build_report(g, p, labels), tmp):
        print(f"--- {Path(path).name}\n{Path(path).read_text().strip()}")

# a two-node cluster hanging off node 2 gets folded into the cluster it links to
g2 = build_graph(EdgeList.from_pairs(list(F7_EDGES) + [(7, 8), (7, 2)]))
p2 = Partition.from_labels([0] * 7 + [1, 1])
res = merge_small_clusters(g2, p2, min_size=3)
print("\n".join(res.ledger()))
print(f"Q {quality(g2, p2):.4f} -> {quality(g2, res.partition):.4f}")
