"""Command-line entry point (``baryalg`` / ``python -m baryalg``).

Exit codes: 0 success, 1 a verification failed, 2 bad input (parse errors,
unreadable files, weights outside (0, 1)), 3 a point or map left the polygon.
Reports are JSON with sorted keys; the same arguments give the same bytes.
Wall time goes to stderr so it never perturbs the report.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import termlang
from .baryterm import eval_term, flatten
from .coordsys import (
    BlendedCoordinates,
    load_table,
    make_system,
    verify_all,
)
from .errors import (
    BarycentricError,
    NotAffinelyConsistent,
    PointOutsidePolygon,
)
from .fixtures import FIXTURES, load_fixture
from .geometry import Polygon, contains, sample_interior
from .tautomap import PartitionOfUnity, classify, cyclic_shift_map, pou_from_selfmap
from .termlang import SourceError

METHODS = ("triangulation", "wachspress")
POU_KINDS = ("triangulation", "wachspress", "constant", "rotation")


class VerificationFailed(Exception):
    pass


def _load_polygon(spec: str | None) -> Polygon:
    if spec is None:
        raise ValueError("--polygon is required for this command")
    if spec in FIXTURES and not Path(spec).exists():
        return load_fixture(spec)
    return Polygon.load(spec)


def _emit(text: str, out: str | None):
    if not text.endswith("\n"):
        text += "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _echo(args, **extra) -> dict:
    echo = {"command": args.command, "polygon": args.polygon, "seed": args.seed,
            "samples": args.samples, "tol": args.tol}
    echo.update(extra)
    return echo


def _samples(args, poly):
    return sample_interior(poly, args.samples, args.seed)


# -- subcommands -------------------------------------------------------------

def cmd_parse(args):
    _emit(termlang.print_term(termlang.parse(args.term)), args.out)


def cmd_eval(args):
    t = termlang.parse(args.term)
    if args.points is not None:
        points = json.loads(args.points)
    else:
        points = _load_polygon(args.polygon).vertices.tolist()
    _emit(json.dumps(np.asarray(eval_term(t, points)).tolist()), args.out)


def cmd_flatten(args):
    t = termlang.parse(args.term)
    _emit(json.dumps(flatten(t, args.arity).tolist()), args.out)


def cmd_coords(args):
    poly = _load_polygon(args.polygon)
    cs = make_system(args.method, poly)
    _emit(json.dumps(cs(args.point).tolist()), args.out)


def _verify_report(args, cs, points, echo):
    reports = verify_all(cs, points, args.tol, args.tol, args.tol, threads=args.threads)
    passed = all(r.passed for r in reports.values())
    body = {"command": echo, "reports": {k: r.as_dict() for k, r in reports.items()}, "passed": passed}
    _emit(_dump(body), args.out)
    if not passed:
        raise VerificationFailed


def cmd_verify(args):
    poly = _load_polygon(args.polygon)
    if args.table:
        cs = load_table(args.table, poly)
        points = cs.points
        echo = _echo(args, table=args.table)
    else:
        cs = make_system(args.method, poly)
        points = _samples(args, poly)
        echo = _echo(args, method=args.method)
    _verify_report(args, cs, points, echo)


def cmd_blend(args):
    q = termlang.parse_weight(args.q)
    poly = _load_polygon(args.polygon)
    cs = BlendedCoordinates(q, make_system(args.method_a, poly), make_system(args.method_b, poly))
    echo = _echo(args, q=q, method_a=args.method_a, method_b=args.method_b)
    _verify_report(args, cs, _samples(args, poly), echo)


def _build_pou(kind: str, poly: Polygon) -> PartitionOfUnity:
    if kind == "constant":
        return PartitionOfUnity.constant(poly)
    if kind == "rotation":
        return pou_from_selfmap(make_system("triangulation", poly), cyclic_shift_map(poly), "rotation")
    return PartitionOfUnity.from_coordinates(make_system(kind, poly))


def cmd_classify(args):
    poly = _load_polygon(args.polygon)
    if args.table:
        tab = load_table(args.table, poly)
        f = PartitionOfUnity.from_table(poly, tab.points, tab.rows)
        flags = classify(f, None, args.tol, threads=args.threads)
        echo = _echo(args, table=args.table)
    else:
        f = _build_pou(args.pou, poly)
        flags = classify(f, _samples(args, poly), args.tol, threads=args.threads)
        echo = _echo(args, pou=args.pou)
    _emit(_dump({"command": echo, "flags": flags.as_dict(), "source": f.source}), args.out)


def cmd_plotdata(args):
    poly = _load_polygon(args.polygon)
    cs = make_system(args.method, poly)
    v = poly.vertices
    lo, hi = v.min(axis=0), v.max(axis=0)
    xs = np.linspace(lo[0], hi[0], args.grid)
    ys = np.linspace(lo[1], hi[1], args.grid)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y"] + [f"b{i}" for i in range(1, poly.n + 1)] + ["pou_residual", "lp_residual"])
    for y in ys:
        for x in xs:
            p = np.array([x, y])
            if not contains(poly, p, 1e-12):
                continue
            b = cs.raw(p)
            pou = abs(b.sum() - 1.0)
            lp = float(np.linalg.norm(b @ v - p))
            w.writerow([repr(float(c)) for c in (x, y, *b, pou, lp)])
    _emit(buf.getvalue(), args.out)


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--polygon", help="polygon JSON file, or one of: " + ", ".join(FIXTURES))
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--samples", type=int, default=1000)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--out", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="baryalg", description="Barycentric algebra toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="print a term in canonical form")
    p.add_argument("term")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("eval", parents=[common], help="evaluate a term on the polygon vertices")
    p.add_argument("term")
    p.add_argument("--points", help="JSON list of points to use as v1, v2, ... instead")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("flatten", parents=[common], help="convex-combination coefficients of a term")
    p.add_argument("term")
    p.add_argument("--arity", "-n", type=int, required=True)
    p.set_defaults(func=cmd_flatten)

    p = sub.add_parser("coords", parents=[common], help="coordinates of one point")
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--point", type=float, nargs=2, required=True, metavar=("X", "Y"))
    p.set_defaults(func=cmd_coords)

    p = sub.add_parser("verify", parents=[common], help="run the three coordinate-system verifiers")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--method", choices=METHODS)
    g.add_argument("--table", help="CSV with header x,y,b1,...,bn")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("blend", parents=[common], help="verify the pointwise blend of two systems")
    p.add_argument("q", help="blend weight in (0, 1), decimal or a/b")
    p.add_argument("method_a", choices=METHODS)
    p.add_argument("method_b", choices=METHODS)
    p.set_defaults(func=cmd_blend)

    p = sub.add_parser("classify", parents=[common], help="classify a partition of unity")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--pou", choices=POU_KINDS)
    g.add_argument("--table", help="CSV with header x,y,b1,...,bn")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("plotdata", parents=[common], help="CSV of coordinates on a lattice")
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--grid", type=int, default=21)
    p.set_defaults(func=cmd_plotdata)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.samples < 0 or args.tol <= 0 or args.threads < 1:
        parser.error("--samples must be >= 0, --tol > 0 and --threads >= 1")
    start = time.perf_counter()
    try:
        args.func(args)
        code = 0
    except VerificationFailed:
        code = 1
    except SourceError as e:
        print(str(e), file=sys.stderr)
        code = 2
    except (PointOutsidePolygon, NotAffinelyConsistent) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        code = 3
    except (BarycentricError, ValueError, OSError, KeyError) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        code = 2
    print(f"wall_time_s={time.perf_counter() - start:.3f}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
