"""Command line front end.

Subcommands
-----------
verify
    Run the bundled checks and print their outcomes as a JSON array.
index
    Load a space document, compute the parallel Killing fields, the
    index and coindex, and the ideal dimension bound.
sweep
    Tabulate index data over a parameter grid of a catalog family as CSV.
jacobi
    Spectrum of the curvature operator along a tangent basis direction.
catalog
    List the named example spaces or emit one as a JSON document.

Exit codes: 0 on success, 1 when a computation fails or a check does not
pass, 2 for unusable input (bad arguments, malformed or invalid JSON).
The numerical tolerance is ``--tol`` when given, else the ``SYMIDX_TOL``
environment variable, else 1e-9.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import catalog
from .homspace import (
    augment_left_invariant,
    jacobi_operator,
    symmetry_ideal,
    transvection_space,
)
from .liealg import DEFAULT_TOL
from .serialize import (
    SpaceFormatError,
    bound_to_dict,
    load_space,
    outcome_to_dict,
    space_to_dict,
    spectrum_to_dict,
    transvection_to_dict,
)
from .verify import run_checks

SWEEP_HEADER = ("lambda,s,t,rho,index,coindex,dim_transvection,"
                "psd_ok,bound_lhs,bound_rhs,equality")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symidx",
        description="Index of symmetry computations for compact "
                    "homogeneous spaces.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--tol", type=float, default=None,
        help="numerical rank/residual tolerance (default: SYMIDX_TOL "
             "environment variable, else 1e-9)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common],
                       help="run the bundled verification checks")
    p.add_argument("--filter", default=None,
                   help="only run checks whose name contains this substring")

    p = sub.add_parser("index", parents=[common],
                       help="index and coindex of symmetry of a space document")
    p.add_argument("--space", required=True, help="path to a space JSON file")
    p.add_argument("--augment", action="store_true",
                   help="enlarge the algebra by opposite-side invariant "
                        "fields first (trivial isotropy only)")

    p = sub.add_parser("sweep", parents=[common],
                       help="tabulate a catalog family over a parameter grid")
    p.add_argument("--family", required=True,
                   choices=("so4-so2", "spin3", "product-spheres"))
    p.add_argument("--lambda", dest="lam", default=None, metavar="A:B:STEP",
                   help="slope grid for so4-so2")
    p.add_argument("--s", default=None, metavar="A:B:STEP",
                   help="metric parameter grid")
    p.add_argument("--t", default=None, metavar="A:B:STEP",
                   help="metric parameter grid")
    p.add_argument("--rho", default=None, metavar="A:B:STEP",
                   help="radius grid for product-spheres")
    p.add_argument("--coupled", action="store_true",
                   help="tie t = 2 - s instead of sweeping t")

    p = sub.add_parser("jacobi", parents=[common],
                       help="curvature operator along a tangent basis direction")
    p.add_argument("--space", required=True, help="path to a space JSON file")
    p.add_argument("--direction", required=True, type=int, metavar="IDX",
                   help="0-based index into the tangent (complement) basis")

    p = sub.add_parser("catalog", parents=[common],
                       help="named example spaces")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("name", nargs="?", default=None,
                   help="catalog name, e.g. round-sphere:3 (emit only)")
    return parser


def _resolve_tol(args, parser) -> float:
    if args.tol is not None:
        return args.tol
    env = os.environ.get("SYMIDX_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            parser.error(f"SYMIDX_TOL={env!r} is not a number")
    return DEFAULT_TOL


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _load_or_fail(path: str, tol: float):
    """Returns (space, exit_code); space is None when exit_code is set."""
    try:
        return load_space(path, tol), None
    except SpaceFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, 2
    except OSError as exc:
        print(f"error: cannot read {path}: {exc.strerror}", file=sys.stderr)
        return None, 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, 1


def _cmd_verify(args, tol, structure_hook) -> int:
    outcomes = run_checks(args.filter, structure_hook=structure_hook)
    if not outcomes:
        print(f"error: no check matches filter {args.filter!r}",
              file=sys.stderr)
        return 1
    _emit_json([outcome_to_dict(o) for o in outcomes])
    return 0 if all(o.status == "pass" for o in outcomes) else 1


def _cmd_index(args, tol) -> int:
    sp, code = _load_or_fail(args.space, tol)
    if code is not None:
        return code
    if args.augment:
        try:
            sp = augment_left_invariant(sp, tol)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    try:
        report = transvection_space(sp, tol)
        bound = symmetry_ideal(sp, report, tol)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit_json({
        "label": sp.label,
        "dim": sp.dim,
        "augmented": bool(args.augment),
        "transvection": transvection_to_dict(report),
        "bound": bound_to_dict(bound),
    })
    return 0


def _parse_grid(text: str, parser, name: str) -> list[float]:
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        if len(parts) == 3:
            start, stop, step = (float(p) for p in parts)
        else:
            raise ValueError
    except ValueError:
        parser.error(f"--{name} expects a number or A:B:STEP, got {text!r}")
    if step <= 0:
        parser.error(f"--{name}: step must be positive")
    values = []
    k = 0
    while True:
        v = start + k * step
        if v > stop + 1e-12:
            break
        values.append(v)
        k += 1
    if not values:
        parser.error(f"--{name}: empty grid")
    return values


def _psd_flag(sp, report) -> bool:
    ok = True
    candidates = [sp.m_basis[:, a] for a in range(sp.dim)]
    candidates += [report.p_space.basis[:, c]
                   for c in range(report.p_space.dim)]
    for x in candidates:
        try:
            spectrum = jacobi_operator(sp, x)
        except ValueError:
            continue
        ok = ok and spectrum.psd_ok
    return ok


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return "%.12g" % value


def _sweep_points(args, parser):
    """Yield (lam, s, t, rho, builder_args) per grid point; the first four
    entries are the CSV parameter fields (None prints empty)."""
    family = args.family
    if family == "so4-so2":
        if args.rho is not None:
            parser.error("--rho does not apply to so4-so2")
        if args.lam is None or args.s is None:
            parser.error("so4-so2 needs --lambda and --s")
        if args.coupled == (args.t is not None):
            parser.error("so4-so2 needs exactly one of --t or --coupled")
        lams = _parse_grid(args.lam, parser, "lambda")
        svals = _parse_grid(args.s, parser, "s")
        tvals = [None] if args.coupled else _parse_grid(args.t, parser, "t")
        for lam in lams:
            for s in svals:
                for t in tvals:
                    t_used = 2.0 - s if t is None else t
                    yield (lam, s, t_used, None,
                           lambda lam=lam, s=s, t=t: catalog.so4_so2(lam, s, t))
    elif family == "spin3":
        if args.lam is not None or args.rho is not None:
            parser.error("spin3 sweeps take only --s or --t")
        if (args.s is None) == (args.t is None):
            parser.error("spin3 needs exactly one of --s or --t")
        if args.coupled:
            parser.error("--coupled does not apply to spin3")
        if args.s is not None:
            for s in _parse_grid(args.s, parser, "s"):
                yield (None, s, None, None,
                       lambda s=s: catalog.spin3_one_parameter(s))
        else:
            for t in _parse_grid(args.t, parser, "t"):
                yield (None, None, t, None,
                       lambda t=t: catalog.spin3_berger(t))
    else:
        if any(v is not None for v in (args.lam, args.s, args.t)) \
                or args.coupled:
            parser.error("product-spheres sweeps take only --rho")
        if args.rho is None:
            parser.error("product-spheres needs --rho")
        for rho in _parse_grid(args.rho, parser, "rho"):
            yield (None, None, None, rho,
                   lambda rho=rho: catalog.product_of_spheres(rho))


def _cmd_sweep(args, tol, parser) -> int:
    rows = []
    for lam, s, t, rho, build in _sweep_points(args, parser):
        try:
            sp, _ = build()
        except ValueError:
            continue
        report = transvection_space(sp, tol)
        bound = symmetry_ideal(sp, report, tol)
        fields = [_fmt(lam), _fmt(s), _fmt(t), _fmt(rho),
                  _fmt(report.index), _fmt(report.coindex),
                  _fmt(report.dim_transvection),
                  _fmt(_psd_flag(sp, report)),
                  _fmt(bound.lhs), _fmt(bound.rhs), _fmt(bound.equality)]
        rows.append(",".join(fields))
    rows.sort()
    print(SWEEP_HEADER)
    for row in rows:
        print(row)
    return 0


def _cmd_jacobi(args, tol, parser) -> int:
    sp, code = _load_or_fail(args.space, tol)
    if code is not None:
        return code
    if not 0 <= args.direction < sp.dim:
        parser.error(f"--direction must be in 0..{sp.dim - 1} for this space")
    try:
        spectrum = jacobi_operator(sp, sp.m_basis[:, args.direction])
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    payload = spectrum_to_dict(spectrum)
    payload["label"] = sp.label
    payload["direction_index"] = args.direction
    _emit_json(payload)
    return 0


def _cmd_catalog(args, tol, parser) -> int:
    if args.action == "list":
        for template in catalog.CATALOG_TEMPLATES:
            print(template)
        return 0
    if args.name is None:
        parser.error("catalog emit needs a name")
    try:
        sp, _ = catalog.from_name(args.name)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit_json(space_to_dict(sp))
    return 0


def main(argv=None, structure_hook=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        tol = _resolve_tol(args, parser)
        if args.command == "verify":
            return _cmd_verify(args, tol, structure_hook)
        if args.command == "index":
            return _cmd_index(args, tol)
        if args.command == "sweep":
            return _cmd_sweep(args, tol, parser)
        if args.command == "jacobi":
            return _cmd_jacobi(args, tol, parser)
        return _cmd_catalog(args, tol, parser)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0


if __name__ == "__main__":
    sys.exit(main())
