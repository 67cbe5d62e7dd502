"""Closed-form asymptotic values where a theorem pins one down.

Each function returns ``None`` at model points without a closed form; those
points only have big-O statements and are never guessed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

INF = math.inf


@dataclass(frozen=True)
class Prediction:
    quantity: str
    family: str
    alpha: float
    r: float
    value: float | None
    source: str


def leaf_fraction_closed(alpha: float, r: float) -> float | None:
    """Limiting fraction of degree-1 nodes in CR(alpha, r)."""
    if alpha == -INF:
        return r
    if alpha == 1:
        return 2.0 / 3.0
    if alpha == 0 and r == 0:
        return 0.5
    if alpha == 0 and 0 < r < 1:
        return (1.0 - math.sqrt(1.0 - r)) / r
    if alpha == INF and 0 < r < 1:
        return 1.0 - r + r * r
    return None


def dmax_exponent_closed(alpha: float, r: float) -> float | None:
    """beta such that the largest degree grows like N**beta, where one is known."""
    if alpha == 1:
        return 0.5
    if r == 1 and alpha == INF:
        return 0.5
    if r == 1 and 1 < alpha < INF:
        return alpha / (2.0 * alpha - 1.0)
    if alpha == INF and 0 <= r < 1:
        # star (r = 0) and star-like king absorbing a (1 - r) share of arrivals
        return 1.0
    if r == 0 and alpha > 1:
        return 1.0
    if r == 1 and alpha == -INF:
        return 1.0
    return None


def second_layer_exponent_closed(alpha: float) -> float:
    """Degree exponent of the rich followers in the layered hierarchy, alpha > 1."""
    if not alpha > 1:
        raise ValueError("second-layer exponent is defined for alpha > 1")
    if alpha == INF:
        return 0.5
    return (alpha - 1.0) / (2.0 * alpha - 1.0)


def king_neighbor_degree_dist(r: float, k: int) -> float:
    """Q_k = (1 - r) r**(k - 1): degree law of the king's neighbors at alpha = inf."""
    if not 0 < r < 1 or k < 1:
        raise ValueError("need 0 < r < 1 and k >= 1")
    return (1.0 - r) * r ** (k - 1)


def king_neighbor_pmf(r: float, kmax: int) -> dict[int, float]:
    return {k: king_neighbor_degree_dist(r, k) for k in range(1, kmax + 1)}


def qba_leaf_upper_bound() -> float:
    """limsup of the leaf fraction of QPA at alpha = 1."""
    return 12.0 / 19.0


def table(alphas, rs) -> list[Prediction]:
    """Every available closed form over an (alpha, r) grid of CR points, plus QPA entries."""
    out = []
    for a in alphas:
        for r in rs:
            lf = leaf_fraction_closed(a, r)
            if lf is not None:
                out.append(Prediction("leaf_fraction", "CR", a, r, lf, _leaf_source(a, r)))
            b1 = dmax_exponent_closed(a, r)
            if b1 is not None:
                out.append(Prediction("dmax_exponent", "CR", a, r, b1, _dmax_source(a, r)))
            if r == 1 and a > 1:
                out.append(Prediction("second_layer_exponent", "CR", a, r,
                                      second_layer_exponent_closed(a), "layered hierarchy"))
            if a == INF and 0 < r < 1:
                out.append(Prediction("king_neighbor_Q1", "CR", a, r,
                                      king_neighbor_degree_dist(r, 1), "king neighbor law"))
        if a == 1:
            out.append(Prediction("leaf_fraction_upper", "QPA", a, math.nan,
                                  qba_leaf_upper_bound(), "QBA leaf bound"))
        if a == -INF:
            out.append(Prediction("leaf_fraction", "QPA", a, math.nan, 0.5, "QPA = CR(-inf, 1/2)"))
    return out


def _leaf_source(a, r):
    if a == -INF:
        return "leaves at alpha=-inf"
    if a == 0 and r > 0:
        return "leaves at alpha=0"
    if a == INF:
        return "king neighbor law"
    if a == 1:
        return "BA tree"
    return "uniform attachment"


def _dmax_source(a, r):
    if a == 1:
        return "BA tree"
    if a == INF and r == 1:
        return "rich club sqrt(N)"
    if a == INF:
        return "star-like king"
    if r == 0:
        return "superlinear condensation"
    if a == -INF:
        return "star"
    return "layered hierarchy"
