"""Command line entry point.

Exit codes: 0 success, 1 verification failed, 2 bad parameters, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

from . import genus1 as g1
from . import genusk as gk
from . import surface as sf
from .errors import DomainViolation, MinsurfError
from .meshio import write_mesh
from .report import verify

EXIT_FAIL, EXIT_DOMAIN, EXIT_NUMERIC = 1, 2, 3
FAMILIES = ("g1a", "g1b", "gk", "limit")


def _params(args):
    if args.family == "g1a":
        return g1.Genus1Params.from_x(args.x, "A")
    if args.family == "g1b":
        return g1.Genus1Params.from_x(args.x, "B")
    if args.family == "gk":
        return gk.GenusKParams.from_kx(args.k, args.x)
    return sf.LimitParams(args.x)


def _float_list(s):
    return [float(v) for v in s.split(",") if v.strip()]


def _int_list(s):
    out = []
    for part in s.split(","):
        if "-" in part.strip()[1:]:
            a, b = part.split("-")
            out.extend(range(int(a), int(b) + 1))
        elif part.strip():
            out.append(int(part))
    return out


def cmd_generate(args) -> int:
    p = _params(args)
    mesh = sf.mesh_fundamental_piece(p, args.res, threads=args.threads)
    if not args.piece:
        mesh = sf.replicate(mesh, sf.symmetry_group(p))
    write_mesh(mesh, args.out, normals=not args.no_normals)
    print("wrote %s: %d vertices, %d faces" % (args.out, len(mesh.vertices), len(mesh.faces)), file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    if args.family == "gk" and args.k is None:
        raise DomainViolation("family gk needs --k")
    rep = verify(args.family, x=args.x, k=args.k, resolution=args.res, tol=args.tol)
    text = rep.to_json()
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if rep.passed else EXIT_FAIL


def cmd_table(args) -> int:
    ks = _int_list(args.k_values)
    xs = _float_list(args.x_values)
    rows = []
    for k in ks:
        for x in xs:
            if args.skip_inadmissible and abs(x) >= gk.admissible_bound(k):
                continue
            p = gk.GenusKParams.from_kx(k, x)
            _, deg, tc = gk.end_classification(p)
            rows.append([k, repr(float(x)), repr(gk.c_quadrature(k, x)), repr(p.c), deg,
                         int(round(tc / math.pi))])
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["k", "x", "c_quad", "c_closed", "deg_g", "total_curvature_over_pi"])
        w.writerows(rows)
    finally:
        if args.out:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="minsurf", description="Generate and verify complete minimal surfaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, need_out=False):
        p.add_argument("--family", choices=FAMILIES, required=True,
                       help="g1a/g1b: genus-one branches; gk: genus-k family; limit: k -> infinity")
        p.add_argument("--k", type=int, default=None, help="genus for family gk")
        p.add_argument("--x", type=float, required=True, help="family parameter")
        p.add_argument("--res", type=int, default=96, help="grid resolution (default: 96)")
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads (default: $MINSURF_THREADS or 1)")
        p.add_argument("--tol", type=float, default=None, help="period residual threshold (default: 1e-8)")

    g = sub.add_parser("gen", help="write a mesh (OBJ, or PLY for a .ply name)")
    common(g)
    g.add_argument("--out", required=True, help="output file")
    g.add_argument("--piece", action="store_true", help="write the fundamental piece only")
    g.add_argument("--no-normals", action="store_true", help="omit vn records in OBJ output")
    g.add_argument("--report", default=None, help="also write a verification report here")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="print a JSON verification report")
    common(v)
    v.add_argument("--report", default=None, help="write the report here instead of stdout")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="CSV of c, deg g and total curvature over a (k, x) grid")
    t.add_argument("--k-values", default="1-6", help="comma list or ranges (default: 1-6)")
    t.add_argument("--x-values", default="0,0.5,1", help="comma list (default: 0,0.5,1)")
    t.add_argument("--skip-inadmissible", action="store_true", help="drop (k, x) outside the domain")
    t.add_argument("--out", default=None, help="CSV file (default: stdout)")
    t.set_defaults(func=cmd_table)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
        if getattr(args, "report", None) and args.command == "gen":
            rep = verify(args.family, x=args.x, k=args.k, resolution=args.res, tol=args.tol)
            with open(args.report, "w") as fh:
                fh.write(rep.to_json() + "\n")
            code = code or (0 if rep.passed else EXIT_FAIL)
        return code
    except DomainViolation as e:
        print("domain error: %s" % e, file=sys.stderr)
        return EXIT_DOMAIN
    except (MinsurfError, FloatingPointError) as e:
        print("numerical failure: %s" % e, file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
