"""Command-line interface: ``goldendd <subcommand> [options]``.

Exit codes: 0 success, 1 domain or I/O error (JSON message on stderr),
2 usage error.  Output is deterministic for identical arguments.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import __version__
from . import cylinders as cyl
from . import natext as nx
from .greedy import ClassicalMap, DeletedDigitMap, DigitSet, DomainError, expand
from .measure import (birkhoff, classical_density, fiber_oracle, golden_density,
                      tower_density)
from .plotdata import emit_plotdata
from .qbeta import QBeta, parse_qbeta, render
from .verify import run_suite

PRECISION_ENV = "GOLDENDD_PRECISION"
HEADER = f"# goldendd {__version__}"


class CLIError(Exception):
    pass


def _precision_default() -> int:
    raw = os.environ.get(PRECISION_ENV, "53")
    try:
        return int(raw)
    except ValueError:
        return 53


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("json", "csv"), default=None,
                   help="output format (default depends on the subcommand)")
    p.add_argument("--precision", type=int, default=_precision_default(),
                   help=f"bits for decimal renderings (env {PRECISION_ENV}, default 53)")
    p.add_argument("--seed", type=int, default=0, help="random seed")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="goldendd", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"goldendd {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="greedy digits of a point")
    p.add_argument("--x", required=True, help="point, e.g. 1, 3/2, 2b-3 (b = beta)")
    p.add_argument("--n", type=int, default=16)
    p.add_argument("--system", choices=("golden", "classical", "deleted"), default="golden")
    p.add_argument("--beta", type=float, help="base for classical/deleted systems")
    p.add_argument("--digits", default="0,2,3", help="comma-separated digits (deleted system)")

    p = sub.add_parser("cylinder", parents=[common], help="fundamental interval of a block")
    p.add_argument("--block", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="cylinders of one rank")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--family", choices=("all", "D", "B"), default="all")
    p.add_argument("--method", choices=("closed", "search", "exhaustive"), default="closed")

    p = sub.add_parser("density", parents=[common], help="invariant densities")
    p.add_argument("--kind", choices=("golden", "fiber", "tower", "classical"), default="golden")
    p.add_argument("--beta", type=float, help="classical base (default: golden, exact)")
    p.add_argument("--truncation", type=int, default=64)
    p.add_argument("--plot-dir")

    p = sub.add_parser("natext", parents=[common], help="orbit in a natural extension")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--n", type=int, default=0, help="level of the starting rectangle")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--version-space", dest="space", type=int, choices=(1, 2), default=1,
                   help="1: rectangle space (x, y, j, n); 2: planar tower (x, y)")
    p.add_argument("--plot-dir")
    p.add_argument("--levels", type=int, default=12, help="strips in the tower outline")

    p = sub.add_parser("birkhoff", parents=[common], help="orbit occupation histogram")
    p.add_argument("--iters", type=int, default=10 ** 6)
    p.add_argument("--bins", choices=("pieces", "uniform"), default="pieces")
    p.add_argument("--refine", type=int, default=1)
    p.add_argument("--start", type=float)
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--plot-dir")

    p = sub.add_parser("verify", parents=[common], help="run the consistency checks")
    p.add_argument("--suite", choices=("all", "quick", "exact", "simulation"), default="all")
    p.add_argument("--timing", action="store_true", help="include per-check runtimes")
    return parser


# --- output helpers ----------------------------------------------------------

def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv(header: list[str], rows: list) -> str:
    buf = io.StringIO()
    buf.write(HEADER + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _point(text: str) -> QBeta:
    try:
        return parse_qbeta(text)
    except ValueError as exc:
        raise CLIError(str(exc)) from None


# --- subcommands -------------------------------------------------------------

def cmd_expand(args) -> str:
    if args.n < 0:
        raise CLIError("--n must be >= 0")
    if args.system == "golden":
        x = _point(args.x)
        digits = expand(x, args.n)
        xrec = render(x, args.precision)
    else:
        if args.beta is None:
            raise CLIError("--beta is required for classical/deleted systems")
        try:
            x = float(args.x)
        except ValueError:
            raise CLIError(f"non-golden systems take float points, got {args.x!r}") from None
        if args.system == "classical":
            tmap = ClassicalMap(args.beta)
        else:
            ds = DigitSet(tuple(float(a) for a in args.digits.split(",")), args.beta)
            tmap = DeletedDigitMap(ds)
        digits = expand(x, args.n, tmap)
        xrec = {"float": x}
    if args.format == "csv":
        return _csv(["index", "digit"], list(enumerate(digits, start=1)))
    return _json({"system": args.system, "x": xrec, "n": args.n, "digits": digits})


def cmd_cylinder(args) -> str:
    c = cyl.cylinder(args.block)
    if args.format == "csv":
        return _csv(["block", "left", "right", "rank", "full"],
                    [(c.block, float(c.left), float(c.right), c.rank, c.full)])
    rec = c.to_record()
    rec["left"], rec["right"] = render(c.left, args.precision), render(c.right, args.precision)
    if not c.empty:
        rec["image"] = [render(v, args.precision) for v in cyl.image(c.block)]
    return _json(rec)


def cmd_enumerate(args) -> str:
    if args.rank < 1:
        raise CLIError("--rank must be >= 1")
    cs = cyl.enumerate_cylinders(args.rank, args.family, args.method)
    if args.format == "csv":
        return _csv(["block", "left", "right", "rank", "full"],
                    [(c.block, float(c.left), float(c.right), c.rank, c.full) for c in cs])
    return _json({"rank": args.rank, "family": args.family, "method": args.method,
                  "cylinders": [c.to_record() for c in cs]})


def cmd_density(args) -> str:
    if args.kind == "classical":
        d = classical_density(args.beta, args.truncation)
    else:
        d = {"golden": golden_density, "fiber": fiber_oracle, "tower": tower_density}[args.kind]()
    if args.plot_dir:
        emit_plotdata(d, args.plot_dir)
    if args.format == "csv":
        return _csv(["left", "right", "value"],
                    [(float(a), float(b), float(v)) for a, b, v in d.pieces()])
    pieces = []
    for a, b, v in d.pieces():
        if isinstance(v, QBeta):
            pieces.append({"left": render(a, args.precision), "right": render(b, args.precision),
                           "value": render(v, args.precision)})
        else:
            pieces.append({"left": {"float": a}, "right": {"float": b}, "value": {"float": v}})
    return _json({"kind": args.kind, "integral_float": float(d.integral()), "pieces": pieces})


def cmd_natext(args) -> str:
    if args.steps < 0:
        raise CLIError("--steps must be >= 0")
    x, y = _point(args.x), _point(args.y)
    if args.space == 1:
        s = nx.RState(x, y, args.j, args.n)
        try:
            nx.check_state(s)
        except nx.StateError as exc:
            raise CLIError(str(exc)) from None
        pts = nx.orbit(s, args.steps)
    else:
        p = nx.TowerPoint(x, y)
        pts = [p]
        for _ in range(args.steps):
            p = nx.tower_step(p)
            pts.append(p)
    if args.plot_dir:
        emit_plotdata(pts[1:] if args.steps == 0 else pts, args.plot_dir, args.levels)
    if args.format == "csv":
        if args.space == 1:
            return _csv(["step", "x", "y", "j", "n"],
                        [(k, float(p.x), float(p.y), p.j, p.n) for k, p in enumerate(pts)])
        return _csv(["step", "x", "y"], [(k, float(p.x), float(p.y)) for k, p in enumerate(pts)])
    recs = []
    for p in pts:
        rec = {"x": render(p.x, args.precision), "y": render(p.y, args.precision)}
        if args.space == 1:
            rec.update(j=p.j, n=p.n)
        recs.append(rec)
    return _json({"version": args.space, "trajectory": recs})


def cmd_birkhoff(args) -> str:
    if args.iters < 0:
        raise CLIError("--iters must be >= 0")
    if args.start is not None and not 0 <= args.start < 2:
        raise CLIError("--start must lie in [0, 2)")
    res = birkhoff(args.start, args.iters, args.bins, args.seed, args.shards, args.refine)
    if args.plot_dir:
        emit_plotdata(res, args.plot_dir)
    rows = [(a, b, o, e, abs(o - e)) for a, b, o, e in res.rows()]
    if args.format == "json":
        return _json({"iters": res.iters, "seed": args.seed, "shards": args.shards,
                      "starts": res.starts, "max_abs_error": res.max_abs_error,
                      "bins": [dict(zip(("bin_left", "bin_right", "observed", "expected",
                                         "abs_error"), r)) for r in rows]})
    return _csv(["bin_left", "bin_right", "observed", "expected", "abs_error"], rows)


def cmd_verify(args):
    results = run_suite(args.suite, args.seed)
    ok = all(r.passed for r in results)
    if args.format == "csv":
        out = _csv(["id", "claim", "status", "residual"],
                   [(r.id, r.claim, "pass" if r.passed else "fail", r.residual) for r in results])
    else:
        out = _json({"suite": args.suite, "seed": args.seed, "passed": ok,
                     "checks": [r.to_record(args.timing) for r in results]})
    return out, (0 if ok else 1)


COMMANDS = {
    "expand": cmd_expand, "cylinder": cmd_cylinder, "enumerate": cmd_enumerate,
    "density": cmd_density, "natext": cmd_natext, "birkhoff": cmd_birkhoff,
    "verify": cmd_verify,
}
DEFAULT_FORMAT = {"birkhoff": "csv"}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = DEFAULT_FORMAT.get(args.command, "json")
    if args.precision < 53:
        parser.error("--precision must be at least 53")
    try:
        result = COMMANDS[args.command](args)
    except (CLIError, DomainError, nx.StateError, cyl.CylinderError, ValueError, OSError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1
    code = 0
    if isinstance(result, tuple):
        result, code = result
    sys.stdout.write(result)
    return code


if __name__ == "__main__":
    sys.exit(main())
