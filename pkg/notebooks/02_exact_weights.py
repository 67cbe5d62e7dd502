"""
Exact attachment probabilities on a small tree
==============================================

Enumerating every (target, redirect) outcome gives the same distribution as
the closed-form per-node weights. At alpha = 1 the redirect model is plain
linear preferential attachment whatever r is.
"""

import numpy as np

from growthlab import GrowingTree, ModelParams
from growthlab import exact

tree = GrowingTree.from_parents([0, 0, 1, 1, 3])
print("degrees:", tree.degree)

for params in (ModelParams.qpa(1.0), ModelParams.cr(2.0, 0.3), ModelParams.cr(1.0, 0.7)):
    enum = exact.attachment_distribution(tree, params)
    closed = exact.normalized_weights(tree, params)
    print(params.label(), np.round(enum, 4), "max diff", np.abs(enum - closed).max())

print("CR(alpha=1) weights:", exact.cr_weights(tree, 1.0, 0.7))
print("eta at alpha=2:", np.round(exact.eta_values(tree, 2.0), 3))
