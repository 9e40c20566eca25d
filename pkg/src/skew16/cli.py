"""Command line interface: ``skew16 generate | verify | mesh | sweep``.

Exit codes:
    0   success, verification passed
    1   verification or mesh residual check failed
    2   usage error
    3   bundle missing or unreadable
    11+ pipeline errors (see ``skew16.errors``)
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from dataclasses import replace
from typing import Optional, Sequence

from .bundle import read_bundle, report_dict, write_bundle, write_json
from .configuration import Tolerances, build_configuration, verify
from .errors import Skew16Error
from .mesh import MeshOptions, clip_lines, mesh_surface, sidecar_path, vertex_residuals, write_obj, write_polylines
from .sweep import run_sweep, write_csv

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

log = logging.getLogger("skew16")


def env_seed() -> int:
    raw = os.environ.get("SKEW16_SEED", "1")
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"SKEW16_SEED must be an integer, got {raw!r}")


def _print_report(report) -> None:
    print(f"max line residual      {report.max_line_residual:.3e}")
    print(f"min intra-family pair  {report.min_intra_family_pairing:.3e}")
    print(f"incidence counts       {sorted(set(report.incidence_counts))}")
    print(f"Klein quadric/recip    {report.quadric_residual:.3e} / {report.reciprocal_residual:.3e}")
    print(f"min sampled gradient   {report.min_sampled_gradient_norm:.3e}"
          f" ({report.smoothness_converged} points, {report.smoothness_skipped} skipped)")
    for msg in report.failures:
        print(f"FAIL: {msg}")
    print("PASSED" if report.passed else "FAILED")


def cmd_generate(args) -> int:
    seed = env_seed()
    tol = Tolerances(seed=seed)
    config = build_configuration(args.lam, args.q0, args.q1, args.root, tolerances=tol)
    out = write_bundle(config, args.out, seed=seed)
    e, o = config.q_even, config.q_odd
    print(f"lambda = {config.lam:g}")
    print(f"q0, q2, q4 = {e.a:.6f}, {e.b:.6f}, {e.c:.6f}")
    print(f"q1, q3, q5 = {o.a:.6f}, {o.b:.6f}, {o.c:.6f}")
    print("coefficients = " + ", ".join(f"{c:.6f}" for c in config.quartic.coeffs))
    _print_report(config.report)
    print(f"bundle written to {out}")
    return EXIT_OK if config.report.passed else EXIT_FAILED


def cmd_verify(args) -> int:
    config, _ = read_bundle(args.inp)
    tol = Tolerances(seed=env_seed())
    if args.tol_residual is not None:
        tol = replace(tol, residual=args.tol_residual)
    if args.tol_skew is not None:
        tol = replace(tol, skew=args.tol_skew)
    report = verify(config, tol)
    _print_report(report)
    if args.report:
        write_json(args.report, report_dict(report))
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_mesh(args) -> int:
    try:
        options = MeshOptions(chart=args.chart, box_half_width=args.box, resolution=args.resolution)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    config, _ = read_bundle(args.inp)
    t0 = time.perf_counter()
    mesh = mesh_surface(config.quartic, options)
    worst = float(vertex_residuals(config.quartic, mesh).max())
    write_obj(mesh, args.out)
    polylines = clip_lines(config.lines, options)
    side = write_polylines(polylines, sidecar_path(args.out))
    elapsed = time.perf_counter() - t0
    ok = worst < mesh.residual_bound
    print(f"{len(mesh.vertices)} vertices, {len(mesh.faces)} faces, {len(polylines)} lines inside the box")
    print(f"max vertex |f| {worst:.3e}, bound {mesh.residual_bound:.3e}: {'ok' if ok else 'VIOLATED'}")
    print(f"mesh written to {args.out}, lines to {side} ({elapsed:.2f} s)")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_sweep(args) -> int:
    if not 9.0 < args.start < args.stop:
        print("error: sweep requires 9 < --from < --to", file=sys.stderr)
        return EXIT_USAGE
    if args.steps < 2:
        print("error: --steps must be at least 2", file=sys.stderr)
        return EXIT_USAGE
    rows = run_sweep(args.start, args.stop, args.steps, Tolerances(seed=env_seed()))
    write_csv(rows, args.out)
    passed = sum(bool(r["passed"]) for r in rows)
    print(f"{passed}/{len(rows)} rows passed; written to {args.out}")
    return EXIT_OK if passed == len(rows) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skew16", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="build, verify and write a run bundle")
    gen.add_argument("--lambda", dest="lam", type=float, required=True)
    gen.add_argument("--q0", type=float)
    gen.add_argument("--q1", type=float)
    gen.add_argument("--root", choices=("plus", "minus"), default="plus")
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_generate)

    ver = sub.add_parser("verify", help="re-verify a bundle from its files")
    ver.add_argument("--in", dest="inp", required=True)
    ver.add_argument("--tol-residual", type=float)
    ver.add_argument("--tol-skew", type=float)
    ver.add_argument("--report", help="optional path for a fresh report.json")
    ver.set_defaults(func=cmd_verify)

    msh = sub.add_parser("mesh", help="triangulate the surface in an affine chart")
    msh.add_argument("--in", dest="inp", required=True)
    msh.add_argument("--chart", choices=("z0", "z1", "z2", "z3"), default="z3")
    msh.add_argument("--box", type=float, default=2.0)
    msh.add_argument("--resolution", type=int, default=30)
    msh.add_argument("--out", required=True)
    msh.set_defaults(func=cmd_mesh)

    swp = sub.add_parser("sweep", help="build and verify over a range of lambda")
    swp.add_argument("--from", dest="start", type=float, required=True)
    swp.add_argument("--to", dest="stop", type=float, required=True)
    swp.add_argument("--steps", type=int, required=True)
    swp.add_argument("--out", required=True)
    swp.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except Skew16Error as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


def run() -> None:
    sys.exit(main())
