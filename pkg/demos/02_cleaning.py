"""Parsing an edge list and cleaning it: largest component, then pruning.

Run: python3 demos/02_cleaning.py
"""

from citenet.graph import build_graph, largest_connected_component, parse_edge_list, prune_low_degree

# a raw citation dump: a duplicate, a self-citation, a reciprocal pair,
# a small detached component and a pendant chain 7-8-9
raw = b"""# citing cited
4 5
5 6
6 7
7 4
4 6
5 4
7 8
8 9
6 6
4 5
0 1
1 2
2 0
"""
edges = parse_edge_list(raw)
print(f"{len(edges)} pairs kept, {edges.n_self_loops_dropped} self-loop(s) and "
      f"{edges.n_duplicates_dropped} duplicate(s) dropped")
g = build_graph(edges)   # the reciprocal 4-5 / 5-4 pair becomes one undirected edge
print("raw:", g)

lcc, to_lcc = largest_connected_component(g)
print("largest component:", lcc, "old ids", to_lcc.new_to_old.tolist())

pruned, step = prune_low_degree(lcc, 1)
print("one pruning pass:", pruned, "old ids", to_lcc.then(step).new_to_old.tolist())

peeled, step = prune_low_degree(lcc, 1, iterative=True)
print("pruned until stable:", peeled, "old ids", to_lcc.then(step).new_to_old.tolist())
