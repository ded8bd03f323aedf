# %% [markdown]
# # Resilient consensus with W-MSR
#
# Each normal node discards up to F neighbour values above its own and up to F
# below, then averages what is left together with its own value.  On a
# (2F+1)-robust graph with F-local adversaries the normal nodes agree, and
# they never leave the hull of their initial values.

# %%
import numpy as np

from robustnet import (AdversaryScript, ConsensusConfig, GenSeed, IntraLayerSpec,
                       algebraic_connectivity, certify_r_robust, gen_fig1, gen_interdependent,
                       robustness_with_witness, run_consensus, split_scenario)

g = gen_interdependent(10, 3, 0.6, IntraLayerSpec("erdos_renyi", q=0.3), GenSeed(7, 0)).graph
print(certify_r_robust(g, 3, algebraic_connectivity(g)).to_dict())

x0 = tuple(np.random.default_rng(0).uniform(0, 1, g.node_count))
cfg = ConsensusConfig(1, x0, {0: AdversaryScript("ramp", c=0.5, slope=1.0)})
trace = run_consensus(g, cfg)
print("converged at round", trace.converged_round, "spread", trace.final_spread,
      "validity", trace.validity)

# %% [markdown]
# On the four-block graph a single stubborn node is enough to stall
# agreement: the witness split keeps each side listening only to itself.
# This is a constructed demonstration, not a general statement about
# 1-robust graphs.

# %%
fig = gen_fig1(16).graph
value, witness = robustness_with_witness(fig)
demo = run_consensus(fig, split_scenario(fig, witness, f=1))
print("robustness", value, "final spread", demo.final_spread, "F-local", demo.f_local)
print(np.round(demo.values[-1], 3))
