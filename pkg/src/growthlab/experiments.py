"""Replicated runs, aggregation and (alpha, r) sweeps.

Replica k of master seed s is grown from ``replica_seed(s, k)``, so results
do not depend on how many workers run them or in what order they finish.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .growth import ModelParams, format_alpha, geometric_snapshots, parse_alpha, run_replica
from .observables import RunSummary, scaling_exponent

METRICS = ("leaf_fraction", "d1", "diameter", "eta_cv", "lead_changes")


@dataclass
class RunConfig:
    family: str = "QPA"
    alpha: float = 1.0
    r: float = 0.0
    n_target: int = 10_000
    replicas: int = 50
    seed: int = 0
    snapshots: list[int] | None = None
    eta_dmin: int = 5
    summary_path: str | None = None
    edges_path: str | None = None
    edges_format: str = "csv"
    histogram_path: str | None = None

    def __post_init__(self):
        self.alpha = parse_alpha(self.alpha)
        self.params  # validates family / r
        if self.replicas < 1:
            raise ValueError("replicas must be >= 1")
        if self.n_target < 2:
            raise ValueError("n_target must be >= 2")
        if self.snapshots is None:
            self.snapshots = geometric_snapshots(self.n_target)
        self.snapshots = [int(s) for s in self.snapshots]
        if self.snapshots != sorted(self.snapshots) or self.snapshots[-1] > self.n_target:
            raise ValueError("snapshots must be ascending and <= n_target")
        if self.snapshots[-1] != self.n_target:
            self.snapshots.append(self.n_target)
        if self.edges_format not in ("csv", "bin"):
            raise ValueError("edges_format must be 'csv' or 'bin'")

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.family, self.alpha, self.r)

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        known = {k: v for k, v in d.items() if k in cls.__dataclass_fields__}
        return cls(**known)


@dataclass
class SweepConfig:
    points: list[tuple[str, float, float]]
    n_target: int = 10_000
    replicas: int = 50
    seed: int = 0
    snapshots: list[int] | None = None
    eta_dmin: int = 5

    def __post_init__(self):
        if not self.points:
            raise ValueError("sweep needs at least one (family, alpha, r) point")
        self.points = [(str(f).upper(), parse_alpha(a), float(r)) for f, a, r in self.points]
        for f, a, r in self.points:
            ModelParams(f, a, r)
        if self.snapshots is None:
            self.snapshots = geometric_snapshots(self.n_target)

    @classmethod
    def from_dict(cls, d: dict) -> "SweepConfig":
        d = dict(d)
        pts = []
        for p in d.pop("points"):
            if isinstance(p, dict):
                pts.append((p["family"], p["alpha"], p.get("r", 0.0)))
            else:
                pts.append(tuple(p))
        known = {k: v for k, v in d.items() if k in cls.__dataclass_fields__}
        return cls(points=pts, **known)

    def run_config(self, point) -> RunConfig:
        f, a, r = point
        return RunConfig(family=f, alpha=a, r=r, n_target=self.n_target, replicas=self.replicas,
                         seed=self.seed, snapshots=self.snapshots, eta_dmin=self.eta_dmin)


@dataclass
class ReplicaResult:
    replica: int
    summaries: list[RunSummary]
    parents: np.ndarray | None = field(default=None, repr=False)


def worker_count(default: int | None = None) -> int:
    env = os.environ.get("GROWTHLAB_WORKERS")
    if env:
        return max(1, int(env))
    return default or 1


def _one(args):
    params, n_target, seed, replica, snapshots, eta_dmin, keep_tree = args
    summaries, tree = run_replica(params, n_target, seed, replica, snapshots, eta_dmin)
    return ReplicaResult(replica, summaries, tree.parents() if keep_tree else None)


def run_replicas(cfg: RunConfig, workers: int | None = None, keep_trees: bool = False) -> list[ReplicaResult]:
    """All replicas of ``cfg``, returned in replica order."""
    jobs = [(cfg.params, cfg.n_target, cfg.seed, k, cfg.snapshots, cfg.eta_dmin, keep_trees)
            for k in range(cfg.replicas)]
    workers = worker_count(workers)
    if workers == 1:
        results = [_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_one, jobs))
    return sorted(results, key=lambda res: res.replica)


def _mean_std(values):
    v = np.asarray(values, dtype=np.float64)
    v = v[np.isfinite(v)]
    if v.size == 0:
        return math.nan, math.nan
    return float(v.mean()), float(v.std())


def aggregate(results: Sequence[ReplicaResult]) -> list[dict]:
    """Mean and (population) standard deviation of each metric at each snapshot size."""
    out = []
    for idx, first in enumerate(results[0].summaries):
        row = {"n": first.n}
        for m in METRICS:
            mean, std = _mean_std([getattr(res.summaries[idx], m) for res in results])
            row[m] = {"mean": mean, "stddev": std}
        out.append(row)
    return out


def d1_exponent(agg: Sequence[dict]) -> tuple[float, float]:
    """Log-log slope of mean largest degree over the snapshot grid."""
    pts = [(row["n"], row["d1"]["mean"]) for row in agg]
    return scaling_exponent(pts)


def fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if x is None or not math.isfinite(x):
        return "nan"
    return f"{x:.9g}"


def sweep_rows(cfg: SweepConfig, workers: int | None = None) -> list[list[str]]:
    """CSV rows ``family,alpha,r,n,metric,mean,stddev`` for every point and snapshot.

    Each point also gets a ``d1_exponent`` row (n = n_target) holding the
    regression slope and its standard error.
    """
    rows = []
    for point in cfg.points:
        rc = cfg.run_config(point)
        agg = aggregate(run_replicas(rc, workers))
        fam, a, r = point
        head = [fam, format_alpha(a), fmt(r)]
        for row in agg:
            for m in METRICS:
                rows.append(head + [str(row["n"]), m, fmt(row[m]["mean"]), fmt(row[m]["stddev"])])
        if len(agg) >= 3:
            slope, se = d1_exponent(agg)
            rows.append(head + [str(cfg.n_target), "d1_exponent", fmt(slope), fmt(se)])
    return rows


def summary_lines(cfg: RunConfig, results: Sequence[ReplicaResult]) -> list[str]:
    """One JSON line per replica (final snapshot plus the snapshot series), then the aggregate."""
    from .observables import clean_json

    params = cfg.params
    base = {"model": params.family, "alpha": format_alpha(params.alpha), "r": params.r, "seed": cfg.seed}
    lines = []
    for res in results:
        final = res.summaries[-1].to_record()
        rec = {**final, **base, "replica": res.replica,
               "snapshots": [s.to_record() for s in res.summaries]}
        lines.append(json.dumps(clean_json(rec)))
    agg = {"aggregate": True, **base, "replicas": len(results), "snapshots": aggregate(results)}
    lines.append(json.dumps(clean_json(agg)))
    return lines
