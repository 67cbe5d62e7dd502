"""Fast self-check of the simulator against its exact oracles.

Each check returns ``(name, passed, detail)``; :func:`run_all` runs every check
and is what ``growthlab validate`` calls.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from . import exact
from .growth import ModelParams, attachment_frequencies, grow_step
from .master_eq import residuals, solve_q
from .tree import GrowingTree, new_seed

INF = math.inf
ALPHAS = (-INF, -2.0, 0.0, 0.5, 1.0, 2.0, INF)


def model_grid():
    pts = []
    for a in ALPHAS:
        pts.append(ModelParams.qpa(a))
        for r in (0.0, 0.3, 1.0):
            pts.append(ModelParams.cr(a, r))
    return pts


def random_trees(count: int, max_nodes: int = 12, seed: int = 2024):
    """Small trees from a mixture of growth models, uniform random recursive trees included."""
    rng = np.random.default_rng(seed)
    grid = model_grid()
    trees = []
    for _ in range(count):
        n = int(rng.integers(2, max_nodes + 1))
        if rng.random() < 0.5:
            parents = np.array([int(rng.integers(0, i)) for i in range(1, n)], dtype=np.int64)
            trees.append(GrowingTree.from_parents(parents))
        else:
            p = grid[int(rng.integers(len(grid)))]
            t = new_seed(n)
            while t.n < n:
                grow_step(t, p, rng)
            trees.append(t)
    return trees


def check_weight_equivalence(trees, tol=1e-12):
    worst = 0.0
    for t in trees:
        for p in model_grid():
            d = np.abs(exact.attachment_distribution(t, p) - exact.normalized_weights(t, p)).max()
            worst = max(worst, float(d))
    return worst <= tol, f"max |enumeration - normalized weights| = {worst:.3e}"


def check_ba_identity(trees):
    bad = 0
    for t in trees:
        for r in (0.0, 0.3, 0.7, 1.0):
            if np.abs(exact.cr_weights(t, 1.0, r) - t.degree).max() > 1e-12:
                bad += 1
        a = exact.attachment_distribution(t, ModelParams.cr(1.0, 0.0))
        b = exact.attachment_distribution(t, ModelParams.cr(1.0, 0.7))
        if np.abs(a - b).max() > 1e-12:
            bad += 1
    return bad == 0, f"{bad} trees violate cr_weight(alpha=1) == degree"


def check_qpa_cr_limit(trees):
    worst = 0.0
    for t in trees:
        a = exact.attachment_distribution(t, ModelParams.qpa(-INF))
        b = exact.attachment_distribution(t, ModelParams.cr(-INF, 0.5))
        worst = max(worst, float(np.abs(a - b).max()))
    return worst <= 1e-15, f"max |QPA(-inf) - CR(-inf, 1/2)| = {worst:.3e}"


def check_sampler(trials=200_000, seed=11):
    """Empirical attachment frequencies of the compiled sampler vs the exact distribution."""
    rng = np.random.default_rng(seed)
    trees = random_trees(6, seed=seed)
    worst = 0.0
    for t in trees:
        for p in (ModelParams.qpa(1.0), ModelParams.cr(2.0, 0.3), ModelParams.cr(-INF, 1.0),
                  ModelParams.qpa(INF)):
            exp = exact.attachment_distribution(t, p)
            got = attachment_frequencies(t, p, rng, trials)
            sd = np.sqrt(trials * exp * (1 - exp))
            dev = np.abs(got - trials * exp)
            z = np.divide(dev, sd, out=dev.copy(), where=sd > 0)
            worst = max(worst, float(z.max()))
    return worst <= 5.0, f"max z-score = {worst:.2f}"


def check_master_equation(kmax=60, lmax=60):
    g = solve_q(kmax, lmax)
    res = float(np.abs(residuals(g)).max())
    exact_ok = g[0, 1] == 0.5 and abs(g[1, 1] - 1 / 6) < 1e-16
    return res <= 1e-14 and exact_ok, f"max residual = {res:.2e}, q01={g[0, 1]}, q11={g[1, 1]}"


def check_diameter(count=200, seed=5):
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(count):
        n = int(rng.integers(2, 201))
        parents = np.array([int(rng.integers(0, i)) for i in range(1, n)], dtype=np.int64)
        t = GrowingTree.from_parents(parents)
        adj = csr_matrix((np.ones(n - 1), (np.arange(1, n), parents)), shape=(n, n))
        ref = int(shortest_path(adj, directed=False, unweighted=True).max())
        bad += t.diameter() != ref
    return bad == 0, f"{bad} of {count} trees disagree with all-pairs BFS"


CHECKS: dict[str, Callable[[], tuple[bool, str]]] = {
    "process_weight_equivalence": lambda: check_weight_equivalence(random_trees(200)),
    "ba_identity": lambda: check_ba_identity(random_trees(200, seed=7)),
    "qpa_equals_cr_at_minus_inf": lambda: check_qpa_cr_limit(random_trees(200, seed=8)),
    "sampler_frequencies": check_sampler,
    "master_equation_residuals": check_master_equation,
    "diameter_oracle": check_diameter,
}


def run_all(names=None):
    out = []
    for name, fn in CHECKS.items():
        if names and name not in names:
            continue
        try:
            ok, detail = fn()
        except Exception as exc:  # report, don't abort the suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(ok), detail))
    return out
