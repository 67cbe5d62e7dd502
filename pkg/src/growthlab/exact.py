"""Exact attachment weights and the brute-force attachment distribution.

Everything here works on small trees in plain numpy and is deliberately
independent of the compiled sampler, so it can serve as its oracle.

For alpha = +/-inf the raw powers d**alpha are degenerate. Weights are then
reported scaled by D**alpha, where D is the max (resp. min) degree, which is
the limit of the normalized finite-alpha weights: (d/D)**alpha -> 1 if d == D
and 0 otherwise.
"""

from __future__ import annotations

import math

import numpy as np

from .growth import ModelParams
from .tree import GrowingTree


def _ref_degree(tree, alpha):
    if alpha == math.inf:
        return tree.max_degree()
    if alpha == -math.inf:
        return tree.min_degree()
    return 1


def _scaled_pow(d, alpha, ref):
    """(d / ref) ** alpha with the 0/1 limit for infinite alpha."""
    d = np.asarray(d, dtype=np.float64)
    if math.isinf(alpha):
        return (d == ref).astype(np.float64)
    if abs(alpha) > 30:
        return np.exp(alpha * (np.log(d) - math.log(ref)))
    return (d / ref) ** alpha


def _neighbor_sum(tree, values):
    """For every node, the sum of ``values`` over its neighbors."""
    child = np.arange(1, tree.n)
    par = tree.parents()
    out = np.bincount(child, weights=values[par], minlength=tree.n)
    out += np.bincount(par, weights=values[child], minlength=tree.n)
    return out


def qpa_weights(tree: GrowingTree, alpha: float) -> np.ndarray:
    """d_i^a/(d_i+1) + sum over neighbors j of d_j^a/(d_j+1), for every node."""
    deg = tree.degree.astype(np.float64)
    own = _scaled_pow(deg, alpha, _ref_degree(tree, alpha)) / (deg + 1.0)
    return own + _neighbor_sum(tree, own)


def cr_weights(tree: GrowingTree, alpha: float, r: float) -> np.ndarray:
    """(1 - r) d_i^a + r * sum over neighbors j of d_j^(a-1), for every node."""
    deg = tree.degree.astype(np.float64)
    p = _scaled_pow(deg, alpha, _ref_degree(tree, alpha))
    # p + r (s - p) rather than (1 - r) p + r s: exact at alpha = 1, where s == p
    return p + r * (_neighbor_sum(tree, p / deg) - p)


def qpa_weight(tree: GrowingTree, i: int, alpha: float) -> float:
    tree._check(i)
    return float(qpa_weights(tree, alpha)[i])


def cr_weight(tree: GrowingTree, i: int, alpha: float, r: float) -> float:
    tree._check(i)
    return float(cr_weights(tree, alpha, r)[i])


def total_weight(tree: GrowingTree, alpha: float) -> float:
    """Sum of d_i^alpha (scaled by D^alpha at infinite alpha, i.e. the argmax/argmin count)."""
    return float(_scaled_pow(tree.degree, alpha, _ref_degree(tree, alpha)).sum())


def model_weights(tree: GrowingTree, params: ModelParams) -> np.ndarray:
    if params.family == "QPA":
        return qpa_weights(tree, params.alpha)
    return cr_weights(tree, params.alpha, params.r)


def attachment_distribution(tree: GrowingTree, params: ModelParams) -> np.ndarray:
    """Exact per-node attachment probabilities by enumerating every (target, outcome) pair."""
    deg = tree.degree
    n = tree.n
    alpha = params.alpha
    if math.isinf(alpha):
        extreme = deg.max() if alpha > 0 else deg.min()
        members = [i for i in range(n) if deg[i] == extreme]
        target_p = {i: 1.0 / len(members) for i in members}
    else:
        # log-space to keep large |alpha| finite
        logs = [alpha * math.log(int(d)) for d in deg]
        top = max(logs)
        raw = [math.exp(x - top) for x in logs]
        total = math.fsum(raw)
        target_p = {i: raw[i] / total for i in range(n)}
    prob = [[] for _ in range(n)]
    for i, pt in target_p.items():
        d = int(deg[i])
        stay = 1.0 / (d + 1) if params.family == "QPA" else 1.0 - params.r
        prob[i].append(pt * stay)
        for j in tree.neighbors(i):
            prob[int(j)].append(pt * (1.0 - stay) / d)
    return np.array([math.fsum(p) for p in prob])


def normalized_weights(tree: GrowingTree, params: ModelParams) -> np.ndarray:
    w = model_weights(tree, params)
    return w / w.sum()


def eta_values(tree: GrowingTree, alpha: float) -> np.ndarray:
    """Balance quantity sum_{j~i} d_j^(alpha-1) / d_i for every node."""
    if math.isinf(alpha):
        raise ValueError("eta is defined for finite alpha only")
    deg = tree.degree.astype(np.float64)
    return _neighbor_sum(tree, deg ** (alpha - 1.0)) / deg


def eta(tree: GrowingTree, i: int, alpha: float) -> float:
    tree._check(i)
    return float(eta_values(tree, alpha)[i])


def gamma_alpha(tree: GrowingTree, alpha: float) -> float:
    """2 alpha * sum over edges (i, j) of (d_i d_j)^(alpha - 1)."""
    deg = tree.degree.astype(np.float64)
    child = np.arange(1, tree.n)
    par = tree.parents()
    return float(2.0 * alpha * np.sum((deg[child] * deg[par]) ** (alpha - 1.0)))
