"""Command-line entry point: ``growthlab {grow,sweep,mastereq,predictions,validate}``.

Run settings can come from a JSON config file (``--config``); any flag given on
the command line overrides the matching config field.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import predictions as pred
from .experiments import RunConfig, SweepConfig, fmt, run_replicas, summary_lines, sweep_rows
from .growth import format_alpha, parse_alpha
from .master_eq import degree_distribution, solve_q, truncation_mass, write_distribution_csv
from .observables import degree_histogram
from .tree import GrowingTree, write_parents_binary, write_parents_csv

log = logging.getLogger("growthlab")


def _load_config(path):
    if not path:
        return {}
    with open(path) as fh:
        return json.load(fh)


def _overrides(args, names):
    return {k: getattr(args, k) for k in names if getattr(args, k, None) is not None}


def _sizes(text):
    return [int(float(s)) for s in text.split(",") if s.strip()]


def _per_replica(template, replica):
    if "{replica}" in template:
        return template.format(replica=replica)
    p = Path(template)
    return str(p.with_name(f"{p.stem}.{replica}{p.suffix}"))


def cmd_grow(args) -> int:
    cfg_d = _load_config(args.config)
    cfg_d.update(_overrides(args, ["family", "alpha", "r", "n_target", "replicas", "seed", "snapshots",
                                   "summary_path", "edges_path", "edges_format", "histogram_path"]))
    cfg = RunConfig.from_dict(cfg_d)
    keep = bool(cfg.edges_path or cfg.histogram_path)
    results = run_replicas(cfg, workers=args.workers, keep_trees=keep)
    lines = summary_lines(cfg, results)
    if cfg.summary_path:
        Path(cfg.summary_path).write_text("\n".join(lines) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")
    for res in results:
        if res.parents is None:
            continue
        tree = GrowingTree.from_parents(res.parents)
        if cfg.edges_path:
            target = _per_replica(cfg.edges_path, res.replica)
            (write_parents_csv if cfg.edges_format == "csv" else write_parents_binary)(tree, target)
        if cfg.histogram_path:
            degree_histogram(tree).to_csv(_per_replica(cfg.histogram_path, res.replica))
    return 0


def cmd_sweep(args) -> int:
    cfg_d = _load_config(args.config)
    if args.points:
        cfg_d["points"] = [p.split(":") for p in args.points]
    cfg_d.update(_overrides(args, ["n_target", "replicas", "seed", "snapshots"]))
    if "points" not in cfg_d:
        raise ValueError("sweep needs --point or a config with 'points'")
    cfg = SweepConfig.from_dict(cfg_d)
    rows = sweep_rows(cfg, workers=args.workers)
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["family", "alpha", "r", "n", "metric", "mean", "stddev"])
        w.writerows(rows)
    finally:
        if args.out:
            out.close()
    return 0


def cmd_mastereq(args) -> int:
    grid = solve_q(args.kmax, args.lmax)
    p = degree_distribution(grid, min(args.kmax, args.lmax))
    mass = truncation_mass(grid)
    if args.out:
        write_distribution_csv(p, args.out)
    else:
        sys.stdout.write("x,p_x\n" + "".join(f"{x},{p[x]:.9g}\n" for x in range(1, len(p))))
    if args.grid_out:
        grid.to_csv(args.grid_out)
    sys.stderr.write(f"truncation_mass={mass:.9g}\n")
    return 0


def cmd_predictions(args) -> int:
    alphas = [parse_alpha(a) for a in args.alphas.split(",")]
    rs = [float(r) for r in args.rs.split(",")]
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["family", "alpha", "r", "quantity", "value", "source"])
        for p in pred.table(alphas, rs):
            r = "" if math.isnan(p.r) else fmt(p.r)
            w.writerow([p.family, format_alpha(p.alpha), r, p.quantity, fmt(p.value), p.source])
    finally:
        if args.out:
            out.close()
    return 0


def cmd_validate(args) -> int:
    from .validate import run_all

    results = run_all(args.only)
    failed = [name for name, ok, _ in results if not ok]
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    if failed:
        print("failed: " + ", ".join(failed))
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="growthlab", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("grow", help="grow replicated trees at one model point")
    g.add_argument("--config")
    g.add_argument("--family", choices=["QPA", "CR", "qpa", "cr"])
    g.add_argument("--alpha", type=parse_alpha, help="number, inf or -inf")
    g.add_argument("--r", type=float)
    g.add_argument("-n", "--n-target", dest="n_target", type=lambda s: int(float(s)))
    g.add_argument("--replicas", type=int)
    g.add_argument("--seed", type=int)
    g.add_argument("--snapshots", type=_sizes, help="comma-separated sizes")
    g.add_argument("--summary", dest="summary_path")
    g.add_argument("--edges", dest="edges_path", help="parent-array file; {replica} is substituted")
    g.add_argument("--edges-format", choices=["csv", "bin"])
    g.add_argument("--histogram", dest="histogram_path")
    g.add_argument("--workers", type=int)
    g.set_defaults(func=cmd_grow)

    s = sub.add_parser("sweep", help="replicated runs over (family, alpha, r) points")
    s.add_argument("--config")
    s.add_argument("--point", dest="points", action="append", help="FAMILY:ALPHA:R, repeatable")
    s.add_argument("-n", "--n-target", dest="n_target", type=lambda s: int(float(s)))
    s.add_argument("--replicas", type=int)
    s.add_argument("--seed", type=int)
    s.add_argument("--snapshots", type=_sizes)
    s.add_argument("--out")
    s.add_argument("--workers", type=int)
    s.set_defaults(func=cmd_sweep)

    m = sub.add_parser("mastereq", help="solve the alpha=-inf degree recurrence")
    m.add_argument("--kmax", type=int, default=400)
    m.add_argument("--lmax", type=int, default=400)
    m.add_argument("--out")
    m.add_argument("--grid-out")
    m.set_defaults(func=cmd_mastereq)

    p = sub.add_parser("predictions", help="closed-form values over an (alpha, r) grid")
    p.add_argument("--alphas", default="-inf,0,1,2,inf")
    p.add_argument("--rs", default="0,0.5,1")
    p.add_argument("--out")
    p.set_defaults(func=cmd_predictions)

    v = sub.add_parser("validate", help="run the fast oracle suite")
    v.add_argument("--only", action="append")
    v.set_defaults(func=cmd_validate)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (ValueError, KeyError, TypeError) as exc:
        print(f"growthlab {args.command}: invalid configuration: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"growthlab {args.command}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
