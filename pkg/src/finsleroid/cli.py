"""Command-line interface.

    finsleroid eval --family pd --g 1 --point 0,0.6,0.8,0
    finsleroid profile --family pd --g 1 --samples 64 --out profile.csv
    finsleroid mesh --family pd --g 1 --resolution 48 --out indicatrix.obj
    finsleroid sweep --family sr --g-min -1.9 --g-max 1.9 --steps 39 --out sweep.csv
    finsleroid verify --grid 0 --out report.json

Exit status: 0 on success, 1 when a verification check fails, 2 on usage
or domain errors.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from typing import List, Optional, Sequence

import numpy as np

from . import __version__
from . import export as ex
from . import hamiltonian as hm
from . import pd_metric as pd
from . import sr_metric as sr
from . import verify as vf
from .errors import FinsleroidError
from .numerics import eigvals_sym, grad_fd, hessian_fd

log = logging.getLogger("finsleroid")

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

# Options whose values may begin with "-" (negative numbers, comma lists).
_VALUE_OPTIONS = ("--point", "--grid", "--g", "--g-min", "--g-max")

VERIFY_FAMILIES = {"pd": ("PD", "MAP", "DUAL"), "sr": ("SR",), "all": vf.FAMILIES}


class UsageError(Exception):
    pass


def _num(x: float) -> str:
    """Shortest round-trip repr, without a trailing ``.0``."""
    s = repr(float(x) + 0.0)
    return s[:-2] if s.endswith(".0") else s


def _reals(text: str, what: str) -> List[float]:
    try:
        vals = [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated reals, got {text!r}") from None
    if not vals or not all(math.isfinite(v) for v in vals):
        raise UsageError(f"{what}: expected finite values, got {text!r}")
    return vals


def _join_values(argv: Sequence[str]) -> List[str]:
    out, it = [], iter(argv)
    for arg in it:
        if arg in _VALUE_OPTIONS:
            nxt = next(it, None)
            out.append(arg if nxt is None else f"{arg}={nxt}")
        else:
            out.append(arg)
    return out


def _profile_family(family: str, dual: bool) -> str:
    if family == "pd":
        return ex.PD_FIGURATRIX if dual else ex.PD_INDICATRIX
    return ex.SR_CO_HYPERBOLOID if dual else ex.SR_HYPERBOLOID


# ------------------------------------------------------------------ commands


def cmd_eval(args) -> int:
    point = np.array(_reals(args.point, "--point"))
    if point.size != args.dim:
        raise UsageError(f"--point has {point.size} components but --dim is {args.dim}")
    lines = []
    if args.family == "pd":
        p = pd.make_pd_params(args.g, args.dim)
        if args.dual:
            lines.append(f"H = {_num(hm.hamiltonian_h(p, point))}")
            if args.momenta:
                lines.append("R^ = " + ",".join(_num(x) for x in hm.contravariant_from_momenta(p, point)))
            if args.eigen:
                m = hessian_fd(lambda c: 0.5 * hm.hamiltonian_h(p, c) ** 2, point)
                lines.append("eigenvalues = " + ",".join(_num(x) for x in eigvals_sym(m)))
        else:
            lines.append(f"K = {_num(pd.metric_k(p, point))}")
            if args.momenta:
                lines.append("R_ = " + ",".join(_num(x) for x in pd.covariant_momenta(p, point)))
            if args.eigen:
                lines.append("eigenvalues = " + ",".join(_num(x) for x in eigvals_sym(pd.metric_tensor(p, point))))
    else:
        q = sr.make_sr_params(args.g, args.dim)
        fn, name = (sr.h_sr, "H_SR") if args.dual else (sr.f_sr, "F_SR")
        where = sr.co_sector(q, point) if args.dual else sr.sector(q, point)
        lines.append(f"{name} = {_num(fn(q, point))}")
        lines.append(f"sector = {where}")
        if args.momenta:
            grad = grad_fd(lambda u: 0.5 * fn(q, u) ** 2, point)
            lines.append("gradient = " + ",".join(_num(x) for x in grad))
        if args.eigen:
            m = hessian_fd(lambda u: 0.5 * fn(q, u) ** 2, point)
            lines.append("eigenvalues = " + ",".join(_num(x) for x in eigvals_sym(m)))
    print("\n".join(lines))
    return EXIT_OK


def cmd_profile(args) -> int:
    fam = _profile_family(args.family, args.dual)
    curve = ex.trace_profile(fam, args.g, args.samples, sector=args.sector, cone_margin=args.cone_margin)
    text = ex.profile_csv(curve)
    if args.out is None:
        sys.stdout.write(text)
    else:
        ex.write_profile_csv(curve, args.out)
        log.info("wrote %d rows to %s", len(curve.samples), args.out)
    return EXIT_OK


def cmd_mesh(args) -> int:
    if args.resolution < 8:
        raise UsageError(f"--resolution must be >= 8, got {args.resolution}")
    fam = _profile_family(args.family, args.dual)
    curve = ex.trace_profile(fam, args.g, args.resolution, sector=args.sector, cone_margin=args.cone_margin)
    mesh = ex.revolve(curve, args.resolution)
    ex.write_mesh_obj(mesh, args.out)
    log.info("wrote %d vertices, %d faces to %s", len(mesh.vertices), len(mesh.faces), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    header, rows = ex.landmark_sweep(args.family, args.g_min, args.g_max, args.steps)
    text = ex.sweep_csv(header, rows)
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    grid = _reals(args.grid, "--grid") if args.grid is not None else list(vf.DEFAULT_GRID)
    families = VERIFY_FAMILIES[args.family]
    if any(f != "SR" for f in families):
        bad = [g for g in grid if not -2.0 < g < 2.0]
        if bad:
            raise UsageError(f"--grid: positive-definite checks need -2 < g < 2, got {bad}")
    if args.dim < 2:
        raise UsageError(f"--dim must be >= 2, got {args.dim}")
    reports = vf.run_all(grid, seed=args.seed, dim=args.dim, families=families)
    if args.out is not None:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(vf.reports_to_json(reports))
    sys.stdout.write(vf.summary_table(reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


# -------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="finsleroid", description="Finsleroid metric toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def family_opts(p, with_dim=False):
        p.add_argument("--family", choices=("pd", "sr"), default="pd")
        p.add_argument("--g", type=float, required=True)
        if with_dim:
            p.add_argument("--dim", type=int, default=4)

    def surface_opts(p):
        p.add_argument("--dual", action="store_true", help="figuratrix / co-hyperboloid instead")
        p.add_argument("--sector", choices=ex.SR_SECTORS, default=sr.FORWARD, help="SR sector to trace")
        p.add_argument("--cone-margin", type=float, default=0.1,
                       help="fraction of the SR sector's angular width left out next to the cone")

    p = sub.add_parser("eval", help="evaluate a metric function at a point")
    family_opts(p, with_dim=True)
    p.add_argument("--point", required=True, help="comma-separated components, T first")
    p.add_argument("--dual", action="store_true", help="evaluate the Hamiltonian at a covector")
    p.add_argument("--momenta", action="store_true", help="also print the gradient of norm^2/2")
    p.add_argument("--eigen", action="store_true", help="also print metric-tensor eigenvalues")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("profile", help="write the (rho, t) profile of a unit level set as CSV")
    family_opts(p)
    surface_opts(p)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("mesh", help="write the surface of revolution as OBJ")
    family_opts(p)
    surface_opts(p)
    p.add_argument("--resolution", type=int, default=48)
    p.add_argument("--out", required=True, help="OBJ path")
    p.set_defaults(func=cmd_mesh)

    p = sub.add_parser("sweep", help="tabulate landmark quantities against g")
    p.add_argument("--family", choices=("pd", "sr"), default="pd")
    p.add_argument("--g-min", type=float, default=-1.9)
    p.add_argument("--g-max", type=float, default=1.9)
    p.add_argument("--steps", type=int, default=39)
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run the verification battery")
    p.add_argument("--grid", help="comma-separated g values (default: the standard 11-point grid)")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--family", choices=tuple(VERIFY_FAMILIES), default="all")
    p.add_argument("--out", help="JSON report path")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(_join_values(sys.argv[1:] if argv is None else argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (UsageError, FinsleroidError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
