"""Attachment kernels and the run driver.

A growth step draws from the rng in a fixed order: the target's degree class
(finite alpha only), the member within that class, the redirect coin, and the
neighbor index (only when redirected). Runs are therefore bit-reproducible for
a given seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels as K
from .tree import GrowingTree, new_seed

# beyond this |alpha| * ln(capacity) a direct d**alpha table risks overflow/underflow
_DIRECT_POW_LIMIT = 600.0


@dataclass(frozen=True)
class ModelParams:
    """Model point: ``family`` is "QPA" or "CR"; alpha may be +/-inf; r is CR-only."""

    family: str
    alpha: float
    r: float = 0.0

    def __post_init__(self):
        fam = self.family.upper()
        if fam not in ("QPA", "CR"):
            raise ValueError(f"unknown model family {self.family!r}")
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "r", float(self.r))
        if math.isnan(self.alpha):
            raise ValueError("alpha must not be NaN")
        if fam == "CR" and not 0.0 <= self.r <= 1.0:
            raise ValueError(f"redirection probability r={self.r} outside [0, 1]")

    @classmethod
    def qpa(cls, alpha):
        return cls("QPA", alpha, 0.0)

    @classmethod
    def cr(cls, alpha, r):
        return cls("CR", alpha, r)

    @property
    def code(self) -> int:
        return K.QPA if self.family == "QPA" else K.CR

    def label(self) -> str:
        a = format_alpha(self.alpha)
        return f"QPA(alpha={a})" if self.family == "QPA" else f"CR(alpha={a}, r={self.r:g})"


class AttachEvent(NamedTuple):
    new_node: int
    target: int
    attached: int
    redirected: bool


def parse_alpha(value) -> float:
    """Accept numbers or the tokens ``inf`` / ``-inf`` (also ``+inf``)."""
    if isinstance(value, (int, float)):
        return float(value)
    token = str(value).strip().lower()
    if token in ("inf", "+inf", "infinity", "+infinity"):
        return math.inf
    if token in ("-inf", "-infinity"):
        return -math.inf
    return float(token)


def format_alpha(alpha: float) -> str:
    if math.isinf(alpha):
        return "inf" if alpha > 0 else "-inf"
    return f"{alpha:g}"


def replica_seed(seed: int, replica: int) -> np.random.SeedSequence:
    """Seed of replica ``replica`` under master seed ``seed``.

    The mixing function is numpy's SeedSequence with ``spawn_key=(replica,)``,
    i.e. the same stream ``SeedSequence(seed).spawn(...)[replica]`` would give.
    """
    return np.random.SeedSequence(int(seed), spawn_key=(int(replica),))


def make_rng(seed: int, replica: int | None = None) -> np.random.Generator:
    """PCG64 generator for a master seed, optionally for one derived replica."""
    ss = np.random.SeedSequence(int(seed)) if replica is None else replica_seed(seed, replica)
    return np.random.Generator(np.random.PCG64(ss))


def _pow_table(alpha, capacity):
    if math.isinf(alpha):
        return np.zeros(1), False
    if abs(alpha) * math.log(max(capacity, 2) + 1) > _DIRECT_POW_LIMIT:
        return np.zeros(1), True
    d = np.arange(capacity + 2, dtype=np.float64)
    d[0] = 1.0
    return d**alpha, False


def _kernel_args(tree, params):
    table, use_log = _pow_table(params.alpha, tree.capacity)
    return params.code, params.alpha, params.r, table, use_log


def sample_target(tree: GrowingTree, alpha: float, rng: np.random.Generator) -> int:
    """Node i with probability d_i^alpha / sum_j d_j^alpha; argmax/argmin bucket at +/-inf."""
    table, use_log = _pow_table(float(alpha), tree.capacity)
    return int(K.sample_target(tree._state, float(alpha), table, use_log, rng))


def redirect_qpa(tree: GrowingTree, target: int, rng: np.random.Generator) -> int:
    """Uniform member of the closed neighborhood of ``target``."""
    tree._check(target)
    return int(K.redirect(tree._state, int(target), K.QPA, 0.0, rng)[0])


def redirect_cr(tree: GrowingTree, target: int, r: float, rng: np.random.Generator) -> int:
    """``target`` with probability 1 - r, otherwise a uniform neighbor."""
    tree._check(target)
    if not 0.0 <= r <= 1.0:
        raise ValueError("r must lie in [0, 1]")
    return int(K.redirect(tree._state, int(target), K.CR, float(r), rng)[0])


def grow_step(tree: GrowingTree, params: ModelParams, rng: np.random.Generator) -> AttachEvent:
    if tree.n >= tree.capacity:
        tree.reserve(2 * tree.capacity)
    v, t, a, red = K.step(tree._state, *_kernel_args(tree, params), rng)
    return AttachEvent(int(v), int(t), int(a), bool(red))


def attachment_frequencies(tree: GrowingTree, params: ModelParams, rng: np.random.Generator,
                           trials: int) -> np.ndarray:
    """Counts of where a new node would attach, over ``trials`` independent draws on a frozen tree."""
    return K.attachment_counts(tree._state, *_kernel_args(tree, params), int(trials), rng)


def geometric_snapshots(n_target: int, start_exp: float = 2.0, step: float = 0.5) -> list[int]:
    """Sizes 10^start, 10^(start+step), ... below ``n_target``, then ``n_target`` itself."""
    sizes = []
    e = start_exp
    while True:
        size = int(round(10**e))
        if size >= n_target:
            break
        if size >= 2:
            sizes.append(size)
        e += step
    sizes.append(int(n_target))
    return sizes


def grow_to(tree: GrowingTree, params: ModelParams, n_target: int, rng: np.random.Generator,
            snapshots: Sequence[int] | None = None, eta_dmin: int = 5):
    """Grow ``tree`` to ``n_target`` nodes, summarizing it at each snapshot size.

    Args:
        tree: Tree to grow in place.
        params: Model point.
        n_target: Final node count.
        rng: Random stream; consumed in the documented draw order.
        snapshots: Ascending sizes at which to record a :class:`RunSummary`.
            Defaults to :func:`geometric_snapshots`. Sizes already passed
            (below the current size) are summarized only if equal to it.
        eta_dmin: Degree cutoff for the balance dispersion.

    Returns:
        List of RunSummary, one per snapshot size.
    """
    from .observables import summarize

    if n_target < tree.n:
        raise ValueError(f"n_target={n_target} below current size {tree.n}")
    if snapshots is None:
        snapshots = geometric_snapshots(n_target)
    snapshots = [int(s) for s in snapshots]
    if snapshots != sorted(snapshots) or (snapshots and snapshots[-1] > n_target):
        raise ValueError("snapshot sizes must be ascending and not exceed n_target")
    tree.reserve(n_target)
    args = _kernel_args(tree, params)
    out = []
    for size in snapshots:
        if size < tree.n:
            continue
        K.grow(tree._state, *args, size, rng)
        out.append(summarize(tree, params.alpha, eta_dmin=eta_dmin))
    K.grow(tree._state, *args, n_target, rng)
    return out


def run_replica(params: ModelParams, n_target: int, seed: int, replica: int = 0,
                snapshots: Sequence[int] | None = None, eta_dmin: int = 5):
    """Grow one replica from the seed edge. Returns (summaries, tree)."""
    rng = make_rng(seed, replica)
    tree = new_seed(capacity=n_target)
    summaries = grow_to(tree, params, n_target, rng, snapshots, eta_dmin=eta_dmin)
    return summaries, tree
