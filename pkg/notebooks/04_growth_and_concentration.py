# %% [markdown]
# # lambda2 and i(G) grow like n p
#
# Above the threshold (`p = c ln n / ((k-1) n)`, c > 1) the minimum degree,
# the maximum degree, lambda2 and the isoperimetric constant are all of order
# n p.  The ratios stay flat as n doubles.

# %%
from robustnet import ExperimentSpec, run_boundary_concentration, run_growth_sweep

spec = ExperimentSpec(n_list=(100, 200, 400), k=2, p_rule="c_over_threshold",
                      c_values=(2.0,), trials=20, base_seed=5)
res = run_growth_sweep(spec)
for n in spec.n_list:
    print(n, {m: round(res.value(m, n, 2.0), 3)
              for m in ("lambda2_over_np", "d_min_over_np", "d_max_over_np", "d_max_bound")})

# %% [markdown]
# Interdependent layers with their own random edges only add connectivity.

# %%
er = ExperimentSpec(n_list=(100, 200), k=2, family="interdependent", intra="er:p",
                    p_rule="c_over_threshold", c_values=(2.0,), trials=10, base_seed=5,
                    metrics=("lambda2_over_np",))
print([round(r.value, 3) for r in run_growth_sweep(er).rows])

# %% [markdown]
# The boundary of one layer is a sum of n^2 (k-1) independent edges, so it
# concentrates around its mean with a Chernoff tail.

# %%
for row in run_boundary_concentration(200, 2, 0.05, trials=200, seed=3).rows:
    print(f"{row.metric:18s} {row.value:.4g}")
