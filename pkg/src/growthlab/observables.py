"""Measured quantities of grown trees and the fits used to compare them with theory."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .exact import eta_values
from .tree import GrowingTree


class InsufficientDataError(ValueError):
    """Too few qualifying points for the requested statistic."""


@dataclass
class DegreeHistogram:
    """Node counts per degree value; ``counts[d]`` for d = 0..max (counts[0] == 0)."""

    counts: np.ndarray

    @property
    def n(self) -> int:
        return int(self.counts.sum())

    @property
    def degrees(self) -> np.ndarray:
        return np.nonzero(self.counts)[0]

    def as_dict(self) -> dict[int, int]:
        return {int(d): int(self.counts[d]) for d in self.degrees}

    def pmf(self) -> dict[int, float]:
        n = self.n
        return {d: c / n for d, c in self.as_dict().items()}

    def scaled(self, factor: int) -> "DegreeHistogram":
        return DegreeHistogram(self.counts * int(factor))

    def __add__(self, other: "DegreeHistogram") -> "DegreeHistogram":
        m = max(len(self.counts), len(other.counts))
        a = np.zeros(m, dtype=np.int64)
        a[: len(self.counts)] += self.counts
        a[: len(other.counts)] += other.counts
        return DegreeHistogram(a)

    def to_csv(self, path_like) -> None:
        with open(path_like, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["degree", "count"])
            for d, c in self.as_dict().items():
                w.writerow([d, c])

    @classmethod
    def from_csv(cls, path_like) -> "DegreeHistogram":
        with open(path_like, newline="") as fh:
            rows = list(csv.DictReader(fh))
        dmax = max(int(r["degree"]) for r in rows)
        counts = np.zeros(dmax + 1, dtype=np.int64)
        for r in rows:
            counts[int(r["degree"])] = int(r["count"])
        return cls(counts)


@dataclass
class RunSummary:
    n: int
    leaf_fraction: float
    d1: int
    d2: int
    argmax_id: int
    diameter: int
    lead_changes: int
    eta_cv: float
    histogram: DegreeHistogram = field(repr=False)

    def to_record(self, **extra) -> dict:
        rec = {k: v for k, v in asdict(self).items() if k != "histogram"}
        rec.update(extra)
        return rec


@dataclass(frozen=True)
class WeibullFit:
    shape: float
    scale: float
    d_lo: int
    d_hi: int
    rms_residual: float

    @property
    def k(self) -> float:
        return self.shape

    @property
    def lam(self) -> float:
        return self.scale


def degree_histogram(tree: GrowingTree) -> DegreeHistogram:
    return DegreeHistogram(np.bincount(tree.degree).astype(np.int64))


def leaf_fraction(tree: GrowingTree) -> float:
    return float(np.count_nonzero(tree.degree == 1)) / tree.n


def diameter(tree: GrowingTree) -> int:
    """Exact diameter: farthest node from node 0, then the farthest node from that."""
    return tree.diameter()


def extreme_degrees(tree: GrowingTree) -> tuple[int, int, int]:
    """(largest degree, second largest degree, lowest id attaining the largest)."""
    deg = tree.degree
    top2 = np.partition(deg, deg.size - 2)[-2:]
    return int(top2[1]), int(top2[0]), int(np.argmax(deg))


def eta_dispersion(tree: GrowingTree, alpha: float, dmin: int = 5) -> float:
    """Coefficient of variation (population std / mean) of eta over nodes with degree >= dmin."""
    mask = tree.degree >= dmin
    if np.count_nonzero(mask) < 2:
        raise InsufficientDataError(f"fewer than 2 nodes with degree >= {dmin}")
    vals = eta_values(tree, alpha)[mask]
    return float(vals.std() / vals.mean())


def summarize(tree: GrowingTree, alpha: float, eta_dmin: int = 5) -> RunSummary:
    d1, d2, amax = extreme_degrees(tree)
    try:
        cv = eta_dispersion(tree, alpha, eta_dmin) if math.isfinite(alpha) else math.nan
    except InsufficientDataError:
        cv = math.nan
    return RunSummary(
        n=tree.n,
        leaf_fraction=leaf_fraction(tree),
        d1=d1,
        d2=d2,
        argmax_id=amax,
        diameter=tree.diameter(),
        lead_changes=tree.lead_changes,
        eta_cv=cv,
        histogram=degree_histogram(tree),
    )


def king_neighbor_degrees(tree: GrowingTree, king: int | None = None) -> DegreeHistogram:
    """Degree histogram of the neighbors of ``king`` (default: lowest-id max-degree node)."""
    if king is None:
        king = extreme_degrees(tree)[2]
    nb = tree.neighbors(king)
    return DegreeHistogram(np.bincount(tree.degree[nb]).astype(np.int64))


def empirical_ccdf(hist: DegreeHistogram) -> tuple[np.ndarray, np.ndarray]:
    """(d, P(D > d)) at every occupied degree value d."""
    d = hist.degrees
    c = hist.counts[d].astype(np.float64)
    above = hist.n - np.cumsum(c)
    return d, above / hist.n


def weibull_tail_fit(hist: DegreeHistogram, d_lo: int = 2, min_tail: int = 10,
                     min_points: int = 5) -> WeibullFit:
    """Fit P(D > d) = exp(-(d / scale) ** shape) on the tail by linearization.

    ln(-ln P(D > d)) is regressed on ln d over occupied degrees
    d_lo <= d <= d_hi, where d_hi is the largest degree that still has at
    least ``min_tail`` nodes strictly above it. The slope is the shape and the
    intercept is -shape * ln(scale).
    """
    d, ccdf = empirical_ccdf(hist)
    above = ccdf * hist.n
    ok = above >= min_tail - 1e-9
    if not np.any(ok):
        raise InsufficientDataError("no degree has enough nodes above it")
    d_hi = int(d[ok].max())
    sel = (d >= d_lo) & (d <= d_hi) & (ccdf > 0) & (ccdf < 1)
    if np.count_nonzero(sel) < min_points:
        raise InsufficientDataError(f"fit window [{d_lo}, {d_hi}] has fewer than {min_points} degrees")
    x = np.log(d[sel].astype(np.float64))
    y = np.log(-np.log(ccdf[sel]))
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return WeibullFit(
        shape=float(slope),
        scale=float(math.exp(-intercept / slope)),
        d_lo=int(d_lo),
        d_hi=d_hi,
        rms_residual=float(np.sqrt(np.mean(resid**2))),
    )


def scaling_exponent(points: Iterable[tuple[float, float]]) -> tuple[float, float]:
    """OLS slope of ln(value) against ln(size), with its standard error."""
    pts = np.asarray(list(points), dtype=np.float64)
    if pts.ndim != 2 or pts.shape[0] < 3:
        raise InsufficientDataError("need at least 3 (size, value) points")
    if np.any(pts <= 0):
        raise ValueError("sizes and values must be positive for a log-log fit")
    x = np.log(pts[:, 0])
    y = np.log(pts[:, 1])
    xc = x - x.mean()
    sxx = np.dot(xc, xc)
    slope = np.dot(xc, y - y.mean()) / sxx
    resid = y - y.mean() - slope * xc
    dof = len(x) - 2
    stderr = math.sqrt(np.dot(resid, resid) / dof / sxx) if dof > 0 else 0.0
    return float(slope), float(stderr)


def tv_distance(p: Mapping[int, float], q: Mapping[int, float]) -> float:
    """Total variation distance; mass missing from either side counts against it."""
    keys = set(p) | set(q)
    diff = sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)
    diff += abs(1.0 - sum(p.values())) + abs(1.0 - sum(q.values()))
    return 0.5 * diff


def summary_json(summary: RunSummary, params, seed: int, **extra) -> str:
    from .growth import format_alpha

    rec = summary.to_record()
    rec.update(model=params.family, alpha=format_alpha(params.alpha), r=params.r, seed=int(seed))
    rec.update(extra)
    return json.dumps(clean_json(rec), sort_keys=False)


def clean_json(obj):
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        return float(f"{obj:.9g}")
    if isinstance(obj, dict):
        return {k: clean_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean_json(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return clean_json(float(obj))
    return obj
