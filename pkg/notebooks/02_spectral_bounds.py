# %% [markdown]
# # Algebraic connectivity and the isoperimetric constant
#
# lambda2 of the Laplacian sandwiches i(G):
# `i^2 / (2 d_max) <= lambda2 <= 2 i`.  Since `i(G) > r - 1` implies
# r-robustness, `lambda2 / 2 > r - 1` is a cheap certificate.

# %%
import numpy as np

from robustnet import (GenSeed, IndeterminateError, IntraLayerSpec, algebraic_connectivity, certify_r_robust,
                       gen_interdependent, isoperimetric_exact, laplacian_spectrum,
                       min_max_degree, robustness_parameter_exact)

lg = gen_interdependent(6, 3, 0.5, IntraLayerSpec("erdos_renyi", q=0.4), GenSeed(3))
g = lg.graph
spec = laplacian_spectrum(g)
print(np.round(spec.eigenvalues, 4))

# %%
lam = spec.lambda2
iso = isoperimetric_exact(g).value
d_min, d_max = min_max_degree(g)
print(f"lambda2 = {lam:.4f}, i(G) = {iso} = {float(iso):.4f}")
print(f"{float(iso) ** 2 / (2 * d_max):.4f} <= {lam:.4f} <= {2 * float(iso):.4f}")

# %% [markdown]
# The certificate either proves r-robustness, refutes it through the minimum
# degree, or says nothing.  Exact enumeration confirms.

# %%
exact = robustness_parameter_exact(g)
for r in range(1, d_min + 2):
    try:
        v = certify_r_robust(g, r, lam, i_lower=iso)
        print(r, v.status, v.method)
    except IndeterminateError as exc:
        print(r, "indeterminate:", exc)
print("exact robustness", exact)

# %% [markdown]
# Adding an edge never lowers lambda2.

# %%
missing = [(u, v) for u in range(g.node_count) for v in range(u + 1, g.node_count)
           if not g.has_edge(u, v)]
u, v = missing[0]
print(algebraic_connectivity(g), "->", algebraic_connectivity(g.with_edge(u, v)))
