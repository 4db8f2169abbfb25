"""Command-line front end: region I/O, metric evaluation, history runs,
matrix and audit reports.

Exit codes: 0 success, 2 malformed input or bad parameters, 3 violated
metric/morph precondition, 4 unknown catalog name.  Identical invocations
produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import analyzer, audits, histories, metrics, morphing, ops, reportio
from .errors import (BadParams, CenterOutside, ErodedToEmpty, NoOverlap,
                     NotContained, OutOfRange, PointOutsideRegion,
                     PreconditionViolated, RegionLabError,
                     ResolutionTooCoarse, SizeLimitExceeded, UnbalancedMass,
                     UnknownName)
from .regions import region_from_json, region_to_json

PARSE_ERRORS = (BadParams, OutOfRange, json.JSONDecodeError, ValueError)
PRECONDITION_ERRORS = (PointOutsideRegion, CenterOutside, NotContained,
                       NoOverlap, ErodedToEmpty, ResolutionTooCoarse,
                       SizeLimitExceeded, UnbalancedMass, PreconditionViolated)

FRAME_GRID = [j / 10.0 for j in range(11)]
FRAME_CELLS = 256


def _common(sub):
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--format", choices=["json", "csv"], default="json")
    sub.add_argument("--out", default=None, help="output path (default stdout)")
    sub.add_argument("--config", default=None,
                     help="JSON file of flag defaults; explicit flags win")
    sub.add_argument("--figures", action="store_true",
                     help="render a PNG next to --out (report commands)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="regionlab",
        description="plane-region metric laboratory")
    sp = ap.add_subparsers(dest="command", required=True)

    p_region = sp.add_parser("region", help="dump a region as JSON")
    p_region.add_argument("--name", default=None, help="catalog entry")
    p_region.add_argument("--t", type=float, default=None,
                          help="history time or family index")
    p_region.add_argument("--in", dest="infile", default=None,
                          help="region file to canonicalize instead")
    _common(p_region)

    p_metric = sp.add_parser("metric", help="evaluate metrics on two regions")
    p_metric.add_argument("p", help="first region file")
    p_metric.add_argument("q", help="second region file")
    p_metric.add_argument("--metrics", default="H,Hd,V,W1")
    p_metric.add_argument("--boundary-step", type=float, default=None)
    p_metric.add_argument("--ot-samples", type=int, default=1024)
    p_metric.add_argument("--cells", type=int, default=ops.DEFAULT_CELLS)
    p_metric.add_argument("--dump-plan", default=None,
                          help="write the first transport plan here")
    p_metric.add_argument("--dump-frames", default=None,
                          help="write morph frames into this directory")
    _common(p_metric)

    p_hist = sp.add_parser("history", help="convergence tracks along a history")
    p_hist.add_argument("--name", required=True)
    p_hist.add_argument("--metrics", default="H,Hd,V,W1")
    p_hist.add_argument("--psi", default=None,
                        help="generator parameter for parameterized histories")
    p_hist.add_argument("--t0", type=float, default=None)
    p_hist.add_argument("--ratio", type=float, default=None)
    p_hist.add_argument("--steps", type=int, default=None)
    p_hist.add_argument("--k-list", default=None,
                        help="comma indices for sequence families")
    p_hist.add_argument("--ot-samples", type=int, default=1024)
    p_hist.add_argument("--boundary-step", type=float, default=None)
    _common(p_hist)

    p_matrix = sp.add_parser("matrix", help="pairwise fineness table on a space")
    p_matrix.add_argument("--space", required=True, choices=["C", "D", "S"])
    p_matrix.add_argument("--metrics", default=",".join(analyzer.DEFAULT_MATRIX_METRICS))
    p_matrix.add_argument("--trials", type=int, default=20,
                          help="convex-space experiment size")
    p_matrix.add_argument("--ot-samples", type=int, default=1024)
    _common(p_matrix)

    p_audit = sp.add_parser("audit", help="randomized checks of the quantitative bounds")
    p_audit.add_argument("--trials", type=int, default=100)
    p_audit.add_argument("--names", default=None,
                         help="comma subset of audits to run")
    _common(p_audit)
    # config defaults must land on the subparser: subcommands parse into a
    # fresh namespace, so parent-level defaults never reach their flags
    ap.subparsers = {"region": p_region, "metric": p_metric, "history": p_hist,
                     "matrix": p_matrix, "audit": p_audit}
    return ap


def _apply_config(ap: argparse.ArgumentParser, argv) -> argparse.Namespace:
    """Parse twice so --config supplies defaults and explicit flags win."""
    first, _ = ap.parse_known_args(argv)
    cfg_path = getattr(first, "config", None)
    if not cfg_path:
        return ap.parse_args(argv)
    with open(cfg_path, "r", encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise BadParams("config file must hold a JSON object")
    unknown = [k for k in cfg if not hasattr(first, k.replace("-", "_"))]
    if unknown:
        raise BadParams(f"config keys not recognized: {', '.join(sorted(unknown))}")
    defaults = {k.replace("-", "_"): v for k, v in cfg.items()}
    ap.subparsers[first.command].set_defaults(**defaults)
    return ap.parse_args(argv)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _figure_path(args) -> str:
    if not args.out:
        raise BadParams("--figures needs --out to place the image")
    stem = args.out.rsplit(".", 1)[0]
    return stem + ".png"


def _load_region(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    return region_from_json(doc)


def cmd_region(args) -> int:
    if (args.name is None) == (args.infile is None):
        raise BadParams("give exactly one of --name or --in")
    if args.infile is not None:
        region = _load_region(args.infile)
    else:
        h = histories.catalog(args.name)
        if args.t is None:
            raise BadParams("--t is required with --name")
        t = args.t
        if isinstance(h, histories.SequenceFamily):
            t = int(t)
        region = h.eval(t)
    doc = region_to_json(region)
    reportio.validate_report(doc, "region")
    _emit(args, reportio.to_json(doc))
    return 0


def _metric_list(spec: str):
    return [metrics.metric_by_name(tok) for tok in spec.split(",") if tok.strip()]


def _dump_plan(args, p, q, spec) -> None:
    from .transport import WeightedPoints, solve_exact
    n = args.ot_samples
    xs = WeightedPoints.uniform(ops.sample_uniform(p, n, args.seed))
    ys = WeightedPoints.uniform(ops.sample_uniform(q, n, args.seed + 1))
    plan = solve_exact(xs, ys, spec.generator)
    doc = {
        "generator": plan.generator,
        "total_cost": plan.total_cost,
        "value": float(spec.generator.inverse(plan.total_cost / xs.mass)),
        "pairs": [[int(i), int(j), float(m)]
                  for (i, j), m in zip(plan.pairs.tolist(), plan.masses)],
        "src_points": plan_points(xs),
        "tgt_points": plan_points(ys),
    }
    reportio.validate_report(doc, "plan")
    with open(args.dump_plan, "w", encoding="utf-8", newline="") as fh:
        fh.write(reportio.to_json(doc))


def plan_points(w) -> list:
    return [[float(x), float(y)] for x, y in w.points]


def _frame_to_raster_doc(frame, cells: int) -> dict:
    parts = frame if isinstance(frame, list) else [frame]
    xs0 = min(p.bbox()[0] for p in parts)
    ys0 = min(p.bbox()[1] for p in parts)
    xs1 = max(p.bbox()[2] for p in parts)
    ys1 = max(p.bbox()[3] for p in parts)
    pad = 0.02 * max(xs1 - xs0, ys1 - ys0)
    bbox = (xs0 - pad, ys0 - pad, xs1 + pad, ys1 + pad)
    grid = None
    for part in parts:
        r = ops.rasterize(part, cells=cells, bbox=bbox)
        grid = r.grid if grid is None else (grid | r.grid)
        origin, cell = r.origin, r.cell_size
    raster = type(r)(origin, cell, grid)
    return region_to_json(raster)


def _dump_frames(args, p, q) -> None:
    import os
    os.makedirs(args.dump_frames, exist_ok=True)
    if hasattr(p, "separation") and hasattr(q, "separation"):
        m = morphing.two_component_morph(p, q)
    else:
        m = morphing.standard_morph_for_pair(p, q)
    for idx, t in enumerate(FRAME_GRID):
        doc = _frame_to_raster_doc(m.frame(t), FRAME_CELLS)
        reportio.validate_report(doc, "region")
        path = f"{args.dump_frames}/frame_{idx:02d}.json"
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(reportio.to_json(doc))


def cmd_metric(args) -> int:
    p = _load_region(args.p)
    q = _load_region(args.q)
    specs = _metric_list(args.metrics)
    results = []
    for spec in specs:
        mv = spec.evaluate(p, q, step=args.boundary_step, n=args.ot_samples,
                           seed=args.seed, cells=args.cells)
        results.append({"metric": spec.name, "value": mv.value,
                        "error": mv.error, "stable": mv.stable})
    doc = {
        "command": "metric",
        "inputs": {"p": args.p, "q": args.q},
        "settings": {"metrics": args.metrics, "seed": args.seed,
                     "ot_samples": args.ot_samples, "cells": args.cells,
                     "boundary_step": args.boundary_step},
        "results": results,
    }
    reportio.validate_report(doc, "metric")
    if args.dump_plan:
        w_specs = [s for s in specs if s.uses_sampling]
        if not w_specs:
            raise BadParams("--dump-plan needs a transport metric in --metrics")
        _dump_plan(args, p, q, w_specs[0])
    if args.dump_frames:
        _dump_frames(args, p, q)
    if args.format == "csv":
        _emit(args, reportio.to_csv(reportio.METRIC_CSV_HEADER,
                                    reportio.metric_rows(doc)))
    else:
        _emit(args, reportio.to_json(doc))
    return 0


def cmd_history(args) -> int:
    params = {"psi": args.psi} if args.psi else None
    h = histories.catalog(args.name, params)
    schedule = None
    if args.t0 is not None or args.ratio is not None or args.steps is not None:
        if isinstance(h, histories.SequenceFamily):
            raise BadParams("sequence families take --k-list, not a schedule")
        base = analyzer.default_schedule(h, _metric_list(args.metrics)[0])
        schedule = analyzer.Schedule(
            args.t0 if args.t0 is not None else base.t0,
            args.ratio if args.ratio is not None else base.ratio,
            args.steps if args.steps is not None else base.steps)
    k_list = None
    if args.k_list:
        k_list = [int(tok) for tok in args.k_list.split(",") if tok.strip()]
    reports = []
    for spec in _metric_list(args.metrics):
        if isinstance(h, histories.SequenceFamily):
            rep = analyzer.sequence_limit(h, spec, k_list=k_list,
                                          seed=args.seed, n_ot=args.ot_samples)
        else:
            rep = analyzer.limit_estimate(h, spec, schedule, seed=args.seed,
                                          n_ot=args.ot_samples)
        reports.append(rep.to_dict())
    doc = {"command": "history", "name": args.name,
           "params": dict(h.params) if h.params else {},
           "reports": reports}
    reportio.validate_report(doc, "history")
    if args.figures:
        reportio.render_history_figure(reports, _figure_path(args))
    if args.format == "csv":
        _emit(args, reportio.to_csv(reportio.HISTORY_CSV_HEADER,
                                    reportio.history_rows(reports)))
    else:
        _emit(args, reportio.to_json(doc))
    return 0


def cmd_matrix(args) -> int:
    names = [tok.strip() for tok in args.metrics.split(",") if tok.strip()]
    result = analyzer.fineness_matrix(args.space, names, seed=args.seed,
                                      n_ot=args.ot_samples, trials=args.trials)
    doc = {"command": "matrix", **result.to_dict()}
    reportio.validate_report(doc, "matrix")
    if args.figures:
        reportio.render_matrix_figure(doc, _figure_path(args))
    if args.format == "csv":
        _emit(args, reportio.to_csv(reportio.MATRIX_CSV_HEADER,
                                    reportio.matrix_rows(doc)))
    else:
        _emit(args, reportio.to_json(doc))
    return 0


def cmd_audit(args) -> int:
    names = None
    if args.names:
        names = [tok.strip() for tok in args.names.split(",") if tok.strip()]
    results = audits.bound_audits(trials=args.trials, seed=args.seed,
                                  names=names)
    doc = {"command": "audit", "trials": args.trials, "seed": args.seed,
           "audits": [r.to_dict() for r in results]}
    reportio.validate_report(doc, "audit")
    if args.figures:
        reportio.render_audit_figure(doc, _figure_path(args))
    if args.format == "csv":
        _emit(args, reportio.to_csv(reportio.AUDIT_CSV_HEADER,
                                    reportio.audit_rows(doc)))
    else:
        _emit(args, reportio.to_json(doc))
    return 0


COMMANDS = {
    "region": cmd_region,
    "metric": cmd_metric,
    "history": cmd_history,
    "matrix": cmd_matrix,
    "audit": cmd_audit,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = _apply_config(ap, argv)
        return COMMANDS[args.command](args)
    except UnknownName as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except PRECONDITION_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON at line {exc.lineno} column {exc.colno}: "
              f"{exc.msg}", file=sys.stderr)
        return 2
    except PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RegionLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
