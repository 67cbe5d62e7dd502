"""
How the largest degree scales
=============================

Run replicas over a geometric size grid and regress ln(mean D1) on ln N.
"""

import math

from growthlab.experiments import RunConfig, aggregate, d1_exponent, run_replicas
from growthlab.predictions import dmax_exponent_closed

for family, alpha, r in (("CR", 1.0, 0.0), ("CR", 2.0, 1.0), ("CR", math.inf, 1.0)):
    cfg = RunConfig(family=family, alpha=alpha, r=r, n_target=30_000, replicas=8, seed=5,
                    snapshots=[1_000, 3_000, 10_000, 30_000])
    agg = aggregate(run_replicas(cfg))
    slope, se = d1_exponent(agg)
    print(f"{family}({alpha}, {r}): slope {slope:.3f} +/- {se:.3f}, closed form {dmax_exponent_closed(alpha, r)}")
