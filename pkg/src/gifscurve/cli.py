"""Command-line surface.

Subcommands operate on a .spec file (or the name of a bundled example):

  validate  primitivity, expanding and chain-condition report
  measure   eigenvalue, dimension, measure vector, edge weights
  param     evaluate the curve map at one parameter
  curve     export a generation polyline as SVG or CSV
  holder    sampled regularity estimate
  norm      evaluate the matrix-homogeneous gauge at a point

`--report` switches to machine-readable JSON lines, one object per check.
Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import corpus
from .addressing import check_chain_condition, head_tail
from .errors import GifsError
from .export import export_curve
from .parametrize import Parametrization
from .pseudonorm import pseudo_norm, pseudo_norm_evaluator
from .recording import build_recording
from .specfile import parse_spec
from .spectral import build_perron_data
from .system import associated_matrix, is_primitive


def _load(spec_arg: str):
    if not Path(spec_arg).exists() and spec_arg in corpus.BUILTIN_SPECS:
        return corpus.builtin(spec_arg)
    return parse_spec(spec_arg)


class _Reporter:
    def __init__(self, machine: bool):
        self.machine = machine

    def check(self, name: str, ok: bool, value, tolerance=None):
        if self.machine:
            print(json.dumps({"check": name, "status": "pass" if ok else "fail",
                              "value": value, "tolerance": tolerance}))
        else:
            print(f"{'ok  ' if ok else 'FAIL'} {name}: {value}")

    def info(self, name: str, value):
        if self.machine:
            print(json.dumps({"check": name, "status": "value", "value": value,
                              "tolerance": None}))
        else:
            print(f"{name}: {value}")


def _cmd_validate(args, rep: _Reporter) -> int:
    g = _load(args.spec)
    rep.check("expanding_matrix", True, True)
    m = associated_matrix(g)
    primitive = is_primitive(m)
    rep.check("primitive", primitive, primitive)
    bd = head_tail(g)
    report = check_chain_condition(g, bd, args.tol)
    rep.check("chain_condition", report.passed, report.max_gap, report.tol)
    for v in report.violations:
        rep.info("chain_violation",
                 {"vertex": v.vertex, "ranks": [v.lower_rank, v.upper_rank],
                  "gap": v.gap})
    return 0 if (primitive and report.passed) else 1


def _cmd_measure(args, rep: _Reporter) -> int:
    g = _load(args.spec)
    pd = build_perron_data(g)
    rep.info("lambda", pd.lam)
    rep.info("alpha", pd.alpha)
    rep.info("measure_vector", [float(x) for x in pd.measure_vector])
    weights = [{"from": e.source, "rank": e.rank, "to": e.target, "p": p}
               for e, p in pd.weights.items()]
    rep.info("weights", weights)
    return 0


def _cmd_param(args, rep: _Reporter) -> int:
    g = _load(args.spec)
    par = Parametrization.from_gifs(g)
    point = par.psi(args.vertex, args.t, args.tol)
    rep.info("psi", [float(x) for x in point])
    return 0


def _cmd_curve(args, rep: _Reporter) -> int:
    g = _load(args.spec)
    par = Parametrization.from_gifs(g)
    curve = par.curve(args.vertex, args.depth)
    out = export_curve(curve, args.format, args.out,
                       rounded_corners=args.rounded_corners,
                       stroke_width=args.stroke_width,
                       viewbox_padding=args.viewbox_padding)
    rep.info("curve", {"points": len(curve.points), "path": str(out)})
    return 0


def _cmd_holder(args, rep: _Reporter) -> int:
    g = _load(args.spec)
    par = Parametrization.from_gifs(g)
    est = par.holder_empirical(args.vertex, args.pairs, args.seed)
    rep.info("exponent_fit", est.exponent_fit)
    rep.info("max_ratio", est.max_ratio)
    rep.check("ratio_within_bound", est.max_ratio <= est.constant_bound,
              est.max_ratio, est.constant_bound)
    return 0 if est.max_ratio <= est.constant_bound else 1


def _cmd_norm(args, rep: _Reporter) -> int:
    g = _load(args.spec)
    ev = pseudo_norm_evaluator(g.matrix)
    x = np.array([float(part) for part in args.x.split(",")])
    if len(x) != g.dimension:
        raise GifsError(f"point has {len(x)} coordinates, system is {g.dimension}-D")
    rep.info("pseudo_norm", pseudo_norm(ev, x))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gifscurve",
        description="Space-filling parametrizations of graph-directed "
                    "self-affine sets",
    )
    parser.add_argument("--report", action="store_true",
                        help="machine-readable JSON lines output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a system description")
    p.add_argument("spec")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("measure", help="print spectral and measure data")
    p.add_argument("spec")
    p.set_defaults(func=_cmd_measure)

    p = sub.add_parser("param", help="evaluate the curve map")
    p.add_argument("spec")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=_cmd_param)

    p = sub.add_parser("curve", help="export a generation polyline")
    p.add_argument("spec")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--format", choices=("svg", "csv"), default="svg")
    p.add_argument("--out", required=True)
    p.add_argument("--rounded-corners", action="store_true")
    p.add_argument("--stroke-width", type=float, default=None)
    p.add_argument("--viewbox-padding", type=float, default=None)
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("holder", help="sampled regularity estimate")
    p.add_argument("spec")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--pairs", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_holder)

    p = sub.add_parser("norm", help="evaluate the gauge at a point")
    p.add_argument("spec")
    p.add_argument("--x", required=True, help='coordinates, e.g. "0.5,1"')
    p.set_defaults(func=_cmd_norm)
    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    rep = _Reporter(args.report)
    try:
        return args.func(args, rep)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    except GifsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
