"""Command-line interface.

Subcommands run the verification pipelines and quadratures and emit either
a human-readable text report (default on stdout) or a CSV (default when
``--out`` names a file).  Exit codes: 0 when every invoked verification is
verified (or the computation simply succeeds), 1 when a verification or
hypothesis fails, 2 on usage and domain errors.

All CSV output uses a one-line header, 17 significant digits, and newline
separators only, so repeated runs with the same arguments and seed are
byte-identical regardless of SHADOWFIT_THREADS.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import shadows as _sh
from ._report import csv_text, kv_text
from .bodies import Cylinder, DoubleCone, parse_body_spec
from .casestudies import (
    BumpParams,
    build_bump_bodies,
    critical_angles,
    rim_escape_witness,
    verify_bump_case,
    verify_cylinder_cone,
)
from .errors import DomainError, HypothesisFailed, ShadowfitError
from .fitting import FitConfig, so3_fit_search
from .geom import random_rotations, sphere_grid
from .integrals import volume, volume_comparison_report, volume_grid


def _add_output_flags(sub):
    sub.add_argument("--out", help="write CSV (or text with --format text) to this path")
    sub.add_argument(
        "--format",
        choices=("csv", "text"),
        help="output format; default text on stdout, csv with --out",
    )


def _add_fit_flags(sub):
    sub.add_argument("--angle-grid", type=int, default=720, help="rotation grid size")
    sub.add_argument("--u-grid", type=int, default=2048, help="angular margin grid size")
    sub.add_argument("--refine-iters", type=int, default=40, help="refinement rounds")
    sub.add_argument("--tol", type=float, default=1e-9, help="containment tolerance")


def _fit_config(args):
    return FitConfig(
        angle_grid=args.angle_grid,
        u_grid=args.u_grid,
        refine_iters=args.refine_iters,
        tol=args.tol,
    )


def _emit(args, text, csv):
    out = getattr(args, "out", None)
    fmt = getattr(args, "format", None)
    if out:
        payload = text if fmt == "text" else csv
        with open(out, "w", newline="") as fh:
            fh.write(payload)
    else:
        payload = csv if fmt == "csv" else text
        sys.stdout.write(payload)


def _cmd_angles(args):
    a = critical_angles(args.r)
    pairs = (("theta0", a.theta0), ("theta1", a.theta1), ("theta2", a.theta2))
    _emit(args, kv_text(pairs), csv_text(("theta0", "theta1", "theta2"), [(a.theta0, a.theta1, a.theta2)]))
    return 0


def _cmd_verify_3d(args):
    report = verify_cylinder_cone(args.r, theta_grid=args.theta_grid, cfg=_fit_config(args))
    _emit(args, report.to_text(), report.to_csv())
    return 0 if report.verified else 1


def _cmd_no3drot(args):
    if args.phi_grid < 1:
        raise DomainError("phi-grid must be positive")
    rows = []
    min_margin = math.inf
    for i in range(args.phi_grid):
        phi = (i + 1) * 0.5 * math.pi / args.phi_grid
        point, margin = rim_escape_witness(args.r, phi)
        rows.append((phi, float(point[0]), float(point[1]), float(point[2]), margin))
        min_margin = min(min_margin, margin)
    rotations = random_rotations(args.rotations, args.seed)
    grid = sphere_grid(3, resolution=args.resolution)
    fitting = so3_fit_search(Cylinder(args.r, args.r), DoubleCone(1.0, 1.0), rotations, grid)
    ok = min_margin > 0.0 and fitting is None
    text = kv_text(
        (
            ("r", args.r),
            ("phi_grid", args.phi_grid),
            ("min_escape_margin", min_margin),
            ("expected_margin", 2.0 * args.r - 1.0),
            ("rotations_checked", args.rotations),
            ("fitting_rotation_found", fitting is not None),
            ("verdict", "verified" if ok else "failed"),
        )
    )
    _emit(args, text, csv_text(("phi", "x", "y", "z", "margin"), rows))
    return 0 if ok else 1


def _cmd_verify_nd(args):
    params = BumpParams(
        n=args.n,
        v=args.v,
        delta=args.delta,
        delta_big=args.delta_big,
        eps=args.eps,
        eps_small=args.eps_small,
        layers=args.layers,
    )
    first, second = build_bump_bodies(params)
    report = verify_bump_case(
        first,
        second,
        n_sections=args.sections,
        n_rotations=args.rotations,
        cfg=_fit_config(args),
        seed=args.seed,
    )
    _emit(args, report.to_text(), report.to_csv())
    return 0 if report.verified else 1


def _cmd_volume(args):
    spec = parse_body_spec(args.body)
    value = volume(spec, volume_grid(spec, resolution=args.resolution))
    pairs = (("body", args.body), ("resolution", args.resolution), ("volume", value))
    _emit(args, kv_text(pairs), csv_text(("body", "resolution", "volume"), [(args.body, args.resolution, value)]))
    return 0


def _cmd_mm_report(args):
    spec_k = parse_body_spec(args.k)
    spec_l = parse_body_spec(args.l)
    grid = sphere_grid(3, resolution=args.resolution)
    report = volume_comparison_report(
        spec_k,
        spec_l,
        mode=args.mode,
        grid=grid,
        cfg=_fit_config(args),
        tolerance=args.tolerance,
        volume_resolution=args.volume_resolution,
    )
    _emit(args, report.to_text(), report.to_csv())
    return 0 if report.satisfied else 1


def _cmd_export_curves(args):
    r, theta = args.r, args.theta
    if not 0.0 <= theta <= 0.5 * math.pi:
        raise DomainError("theta must lie in [0, pi/2]")
    count = args.u_grid
    if count < 8:
        raise DomainError("u-grid must be at least 8")
    u = 2.0 * math.pi * np.arange(count) / count
    shift = _sh.u0(theta) if theta > 0.25 * math.pi else 0.0
    cone = np.asarray(_sh.cone_section_rho(theta, u), float)
    cyl = np.asarray(_sh.cylinder_section_rho(r, theta, u), float)
    cyl90 = np.asarray(_sh.cylinder_section_rho(r, theta, u - 0.5 * math.pi), float)
    cylu0 = np.asarray(_sh.cylinder_section_rho(r, theta, u - shift), float)
    columns = ("u", "rho_cone", "rho_cylinder", "rho_cylinder_rot90", "rho_cylinder_rot_u0")
    rows = list(zip(u.tolist(), cone.tolist(), cyl.tolist(), cyl90.tolist(), cylu0.tolist()))
    csv = csv_text(columns, rows)
    _emit(args, csv, csv)
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="shadowfit",
        description="Section and projection fitting checks for convex and star bodies.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("angles", help="critical tilt angles for the cylinder-in-cone strategies")
    sub.add_argument("--r", type=float, required=True, help="cylinder radius")
    _add_output_flags(sub)
    sub.set_defaults(func=_cmd_angles)

    sub = subs.add_parser("verify-3d", help="verify cylinder sections fit inside cone sections")
    sub.add_argument("--r", type=float, required=True, help="cylinder radius")
    sub.add_argument("--theta-grid", type=int, default=200, help="number of tilt samples")
    _add_fit_flags(sub)
    _add_output_flags(sub)
    sub.set_defaults(func=_cmd_verify_3d)

    sub = subs.add_parser(
        "no3drot", help="witness that no whole-body rotation fits the cylinder in the cone"
    )
    sub.add_argument("--r", type=float, required=True, help="cylinder radius")
    sub.add_argument("--phi-grid", type=int, default=100, help="number of tilt witnesses")
    sub.add_argument("--rotations", type=int, default=10000, help="random rotations to test")
    sub.add_argument("--seed", type=int, default=0, help="rotation sampling seed")
    sub.add_argument("--resolution", type=int, default=64, help="sphere grid resolution")
    _add_output_flags(sub)
    sub.set_defaults(func=_cmd_no3drot)

    sub = subs.add_parser("verify-nd", help="verify the bumpy-sphere section/rotation dichotomy")
    sub.add_argument("--n", type=int, default=3, help="ambient dimension / bump count")
    sub.add_argument("--v", type=float, default=0.3, help="simplex side")
    sub.add_argument("--delta", type=float, default=0.01, help="small bump radius")
    sub.add_argument("--delta-big", type=float, default=0.14, help="large bump radius")
    sub.add_argument("--eps", type=float, default=1e-4, help="large bump height")
    sub.add_argument("--eps-small", type=float, default=5e-6, help="small bump height")
    sub.add_argument("--layers", type=int, default=0, help="latitude bands (0 means 2^n)")
    sub.add_argument("--sections", type=int, default=500, help="random section planes")
    sub.add_argument("--rotations", type=int, default=10000, help="random rotations")
    sub.add_argument("--seed", type=int, default=42, help="sampling seed")
    _add_fit_flags(sub)
    _add_output_flags(sub)
    sub.set_defaults(func=_cmd_verify_nd)

    sub = subs.add_parser("volume", help="volume of a body via radial quadrature")
    sub.add_argument("--body", required=True, help="body spec, e.g. cylinder:r=0.51,hh=0.51")
    sub.add_argument("--resolution", type=int, default=48, help="polar nodes per panel")
    _add_output_flags(sub)
    sub.set_defaults(func=_cmd_volume)

    sub = subs.add_parser(
        "mm-report", help="shadow-fit hypothesis plus volume comparison for two bodies"
    )
    sub.add_argument("--K", dest="k", required=True, help="inner body spec")
    sub.add_argument("--L", dest="l", required=True, help="outer body spec")
    sub.add_argument("--mode", choices=("sections", "projections"), default="sections")
    sub.add_argument("--resolution", type=int, default=8, help="hypothesis grid resolution")
    sub.add_argument(
        "--volume-resolution", type=int, default=48, help="volume quadrature resolution"
    )
    sub.add_argument("--tolerance", type=float, default=1e-3, help="volume comparison slack")
    _add_fit_flags(sub)
    _add_output_flags(sub)
    sub.set_defaults(func=_cmd_mm_report)

    sub = subs.add_parser("export-curves", help="CSV of section curves at one tilt")
    sub.add_argument("--r", type=float, required=True, help="cylinder radius")
    sub.add_argument("--theta", type=float, required=True, help="tilt angle")
    sub.add_argument("--u-grid", type=int, default=512, help="samples around the circle")
    _add_output_flags(sub)
    sub.set_defaults(func=_cmd_export_curves)

    return parser


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HypothesisFailed as exc:
        print("hypothesis failed: %s" % exc, file=sys.stderr)
        return 1
    except ShadowfitError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
