"""
Growing a tree with redirection
===============================

Grow one tree under each model family and look at what comes out.
"""

import math

import numpy as np

from growthlab import ModelParams, make_rng, new_seed, grow_step, run_replica
from growthlab.observables import degree_histogram, summarize

# A single growth step: pick a target by degree^alpha, then maybe redirect
# to one of its neighbors. The event records both nodes.
rng = make_rng(7)
tree = new_seed(2)
for _ in range(8):
    ev = grow_step(tree, ModelParams.qpa(1.0), rng)
print("last step:", ev)
print("parents:", tree.parents())

# Full runs go through run_replica, which returns one summary per snapshot size.
for params in (ModelParams.qpa(1.0), ModelParams.cr(1.0, 0.5), ModelParams.cr(math.inf, 0.5),
               ModelParams.cr(-math.inf, 1.0)):
    summaries, tree = run_replica(params, 20_000, seed=1, snapshots=[1_000, 20_000])
    s = summaries[-1]
    print(f"{params.label():>16}  leaves={s.leaf_fraction:.3f}  d1={s.d1:5d}  diameter={s.diameter}")

# Degree histograms are plain count arrays.
hist = degree_histogram(tree)
print("degree counts of the last tree:", dict(list(hist.as_dict().items())[:6]))
print(summarize(tree, -math.inf))
