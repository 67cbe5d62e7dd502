"""Stationary degree distribution of QPA at alpha = -inf.

q[k, l] is the asymptotic fraction of nodes with k leaf neighbors and l
non-leaf neighbors. It solves

    (2k + 1) q[k, l] = (k - 1) q[k-1, l] + (k + 1) q[k+1, l-1]
                       + 1/2 [k = 0, l = 1] + 1/2 [k = 1, l = 1]

with q[k, 0] = 0. The (k+1, l-1) term lives in the previous l-layer and the
(k-1, l) term earlier in the current layer, so one forward sweep (l ascending,
then k ascending) fills the table exactly.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np


class IncompleteDiagonalError(ValueError):
    """Requested degree needs grid cells beyond the truncation."""


@dataclass(frozen=True)
class QGrid:
    q: np.ndarray  # shape (kmax + 1, lmax + 1)

    @property
    def kmax(self) -> int:
        return self.q.shape[0] - 1

    @property
    def lmax(self) -> int:
        return self.q.shape[1] - 1

    def __getitem__(self, kl):
        k, l = kl
        if 0 <= k <= self.kmax and 0 <= l <= self.lmax:
            return float(self.q[k, l])
        return 0.0

    def to_csv(self, path_like) -> None:
        with open(path_like, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["k", "l", "q"])
            for k in range(self.kmax + 1):
                for l in range(self.lmax + 1):
                    w.writerow([k, l, f"{self.q[k, l]:.9g}"])


def _source(k, l):
    return 0.5 if l == 1 and k in (0, 1) else 0.0


def solve_q(kmax: int = 400, lmax: int = 400) -> QGrid:
    if kmax < 1 or lmax < 1:
        raise ValueError("kmax and lmax must be at least 1")
    q = np.zeros((kmax + 1, lmax + 1))
    for l in range(1, lmax + 1):
        prev = q[:, l - 1]
        cur = q[:, l]
        for k in range(kmax + 1):
            acc = _source(k, l)
            if k >= 1:
                acc += (k - 1) * cur[k - 1]
            if k + 1 <= kmax:
                acc += (k + 1) * prev[k + 1]
            cur[k] = acc / (2 * k + 1)
    return QGrid(q)


def residuals(grid: QGrid) -> np.ndarray:
    """Per-cell defect of the recurrence, taking out-of-grid neighbors as 0."""
    q = grid.q
    kmax, lmax = grid.kmax, grid.lmax
    res = np.zeros_like(q)
    for k in range(kmax + 1):
        for l in range(1, lmax + 1):
            rhs = (k - 1) * grid[k - 1, l] + (k + 1) * grid[k + 1, l - 1] + _source(k, l)
            res[k, l] = (2 * k + 1) * q[k, l] - rhs
    res[:, 0] = q[:, 0]
    return res


def degree_distribution(grid: QGrid, xmax: int | None = None) -> np.ndarray:
    """p[x] = sum of q[k, l] over k + l = x, for x = 0..xmax (p[0] = 0).

    A diagonal k + l = x is complete only when x <= min(kmax, lmax).
    """
    limit = min(grid.kmax, grid.lmax)
    if xmax is None:
        xmax = limit
    if xmax > limit:
        raise IncompleteDiagonalError(f"xmax={xmax} exceeds the complete-diagonal limit {limit}")
    p = np.zeros(xmax + 1)
    for x in range(1, xmax + 1):
        k = np.arange(0, x + 1)
        p[x] = grid.q[k, x - k].sum()
    return p


def truncation_mass(grid: QGrid) -> float:
    return float(1.0 - grid.q.sum())


def write_distribution_csv(p: np.ndarray, path_like) -> None:
    with open(path_like, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "p_x"])
        for x in range(1, len(p)):
            w.writerow([x, f"{p[x]:.9g}"])
