# %% [markdown]
# # Robustness versus connectivity on the four-block graph
#
# Four blocks of four nodes: V1-V2 and V3-V4 are complete bipartite, and V2-V3
# is joined by a perfect matching.  Every node has degree at least 4 and the
# graph is 4-connected, yet the split (V1 u V2, V3 u V4) leaves every node with
# at most one neighbour across.  So the graph is only 1-robust.

# %%
from fractions import Fraction

from robustnet import (gen_fig1, isoperimetric_exact, min_max_degree, reach,
                       robustness_with_witness, vertex_connectivity)
from robustnet.graph_core import mask_to_nodes

lg = gen_fig1(16, t=1)
g = lg.graph
print("nodes", g.node_count, "edges", g.edge_count)
print("degree range", min_max_degree(g))
print("vertex connectivity", vertex_connectivity(g))

# %% [markdown]
# Exact robustness comes with a witness: two disjoint sets, neither of which
# holds a node with `value + 1` neighbours outside it.

# %%
value, (s1, s2) = robustness_with_witness(g)
print("robustness parameter", value)
print("S1", mask_to_nodes(s1), "reach", reach(g, s1))
print("S2", mask_to_nodes(s2), "reach", reach(g, s2))

# %% [markdown]
# The isoperimetric constant is exact too, and it is attained on the same set.

# %%
iso = isoperimetric_exact(g)
print("i(G) =", iso.value, "on", iso.argmin_nodes)
assert iso.value == Fraction(1, 2)

# %% [markdown]
# Replacing the matching by a t-regular circulant lifts the robustness to t
# while i(G) stays at most t/2.

# %%
for t in (1, 2, 3, 4):
    h = gen_fig1(16, t).graph
    print(t, robustness_with_witness(h)[0], isoperimetric_exact(h).value)
