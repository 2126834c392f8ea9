"""Degree statistics, hubs and depth-limited neighborhoods on a small graph.

Run: python3 demos/01_degree_and_neighborhoods.py
"""

import numpy as np

from citenet.analysis import degree_stats, neighborhood_census, reach_profile, top_degree_nodes
from citenet.generators import f7, stochastic_block_model

# F7: two triangles {0,1,2} and {4,5,6} joined through node 3
g = f7()
print(g)
print(degree_stats(g).summary())          # min=2 max=3 mean=2.29 median=2
print("hubs:", top_degree_nodes(g, 2))    # [(2, 3), (4, 3)]

# depth-2 neighborhood of node 0: nodes {0,1,2,3} and the 4 edges among them
c = neighborhood_census(g, 0, 2)
print(f"depth 2 around node 0: nodes={c.n_nodes} edges={c.n_edges}")
print("reach by depth:", reach_profile(g, 0, 4).cumulative)

# same questions on something bigger
big, _ = stochastic_block_model([2000, 2000], 0.005, 0.0005, seed=1)
st = degree_stats(big)
print(big)
print(st.summary())
hist = np.array(sorted(st.histogram.items()))
print("most common degree:", hist[hist[:, 1].argmax(), 0])
hub, deg = top_degree_nodes(big, 1)[0]
print(f"hub {hub} (degree {deg}) reaches", reach_profile(big, hub, 4).cumulative)
