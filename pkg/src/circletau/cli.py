"""Command-line front end.

Subcommands: rot, cycles, tau, boundary, trace, weld, sigma, tsujii,
atlas.  Outputs are deterministic files under --out; exit code 0 on
success, 2 on a validation error, 3 on a numerical failure (the error
class name is printed).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from fractions import Fraction

from . import __version__
from .dynamics import cycles_to_csv_rows, find_cycles, rotation_estimate
from .errors import ConfigError, NumericalError
from .experiments import trace_bubble, tsujii_gap
from .linearize import sigma
from .maps import CircleMap, total_distortion
from .svgplot import render_bubble_svg
from .uniformize import boundary_tau, complex_rotation_number, solution_csv_row
from .welding import welding_constant


def _parse_map(spec: str) -> CircleMap:
    """JSON map descriptor, inline or a file path."""
    if spec.strip().startswith("{"):
        desc = json.loads(spec)
    else:
        with open(spec) as fh:
            desc = json.load(fh)
    return CircleMap.from_descriptor(desc)


def _parse_omega(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ConfigError(f"--omega expects RE or RE,IM, got {text!r}")


def _parse_pq(text: str):
    try:
        fr = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"--pq expects P/Q, got {text!r}") from exc
    return fr.numerator, fr.denominator


def _parse_ladder(text: str):
    vals = [float(t) for t in text.split(",") if t.strip()]
    if not vals:
        raise ConfigError("--ladder needs at least one height")
    return vals


def _validate_nm(n, m):
    if n is not None:
        if n < 8:
            raise ConfigError(f"--n must be >= 8, got {n}")
        if m is not None and m < 4 * n + 4:
            raise ConfigError(f"--m must be >= 4*n + 4 = {4 * n + 4}, got {m}")


def _emit_json(outdir, name, payload):
    path = os.path.join(outdir, name)
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _emit_csv(outdir, name, header, rows):
    path = os.path.join(outdir, name)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return path


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="circletau",
        description="complex rotation numbers of analytic circle diffeomorphisms",
    )
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("command", choices=[
        "rot", "cycles", "tau", "boundary", "trace", "weld", "sigma",
        "tsujii", "atlas",
    ])
    ap.add_argument("--map", required=True, help="JSON descriptor file or inline JSON")
    ap.add_argument("--omega", help="RE or RE,IM")
    ap.add_argument("--pq", help="rational P/Q")
    ap.add_argument("--n", type=int, help="frequency cutoff (>= 8)")
    ap.add_argument("--m", type=int, help="collocation count (>= 4n + 4)")
    ap.add_argument("--ladder", help="comma-separated decreasing heights")
    ap.add_argument("--out", default=".", help="output directory")
    ap.add_argument("--emit", default="json,csv,svg",
                    help="comma list of csv,json,svg")
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--samples", type=int, default=16, help="trace sample count")
    ap.add_argument("--qmax", type=int, default=2, help="atlas: largest period")
    ap.add_argument("--depth", type=int, default=4, help="tsujii: approximant count")
    ap.add_argument("--tol", type=float, default=1e-10)
    return ap


def _require(args, *fields):
    for f in fields:
        if getattr(args, f) is None:
            raise ConfigError(f"command {args.command!r} requires --{f}")


def run(args) -> int:
    fmap = _parse_map(args.map)
    emit = {e.strip() for e in args.emit.split(",") if e.strip()}
    if not emit <= {"csv", "json", "svg"}:
        raise ConfigError(f"--emit entries must be csv,json,svg, got {args.emit}")
    if args.tol <= 0:
        raise ConfigError("--tol must be positive")
    _validate_nm(args.n, args.m)
    os.makedirs(args.out, exist_ok=True)
    outdir = args.out
    n_modes = args.n if args.n is not None else 48

    if args.command == "rot":
        est = rotation_estimate(fmap, tol=args.tol)
        _emit_json(outdir, "rot.json", {
            "rot": est.value % 1.0,
            "bracket_width": est.bracket_width,
            "exact_rational": None if est.exact is None else
                [est.exact.numerator, est.exact.denominator],
            "iterations": est.iterations,
        })

    elif args.command == "cycles":
        _require(args, "pq")
        p, q = _parse_pq(args.pq)
        cycles = find_cycles(fmap, p, q)
        _emit_csv(outdir, "cycles.csv", ("p", "q", "point", "rho", "kind"),
                  cycles_to_csv_rows(cycles))

    elif args.command == "tau":
        _require(args, "omega")
        omega = _parse_omega(args.omega)
        sol = complex_rotation_number(fmap, omega, n_modes, args.m)
        _emit_json(outdir, "tau.json", {
            "re_omega": omega.real, "im_omega": omega.imag,
            "tau_re": sol.tau.re, "tau_im": sol.tau.im,
            "residual": sol.residual, "min_phi_prime": sol.min_phi_prime,
            "N": sol.n_modes, "M": sol.m_points,
        })
        if "csv" in emit:
            _emit_csv(outdir, "tau.csv",
                      ("re_omega", "im_omega", "re_tau", "im_tau", "residual",
                       "min_phi_prime", "N", "M"),
                      [solution_csv_row(sol)])

    elif args.command == "boundary":
        _require(args, "omega")
        omega = _parse_omega(args.omega)
        ladder = _parse_ladder(args.ladder) if args.ladder else None
        bv = boundary_tau(fmap, omega.real, ladder=ladder)
        _emit_json(outdir, "boundary.json", {
            "omega": omega.real,
            "tau_re": bv.tau.re, "tau_im": bv.tau.im,
            "error_estimate": bv.error_estimate,
            "method": bv.method,
            "rungs": [[r.y, r.tau.real, r.tau.imag, r.residual, r.n_modes]
                      for r in bv.rungs],
        })

    elif args.command == "trace":
        _require(args, "pq")
        p, q = _parse_pq(args.pq)
        tr = trace_bubble(fmap, p, q, samples=args.samples,
                          workers=args.workers)
        if "csv" in emit:
            _emit_csv(outdir, "trace.csv",
                      ("omega", "p", "q", "tau_re", "tau_im", "h", "angle", "err"),
                      tr.csv_rows())
        if "json" in emit:
            _emit_json(outdir, "trace_endpoints.json", {
                "left": tr.left.to_json_dict() if tr.left else None,
                "right": tr.right.to_json_dict() if tr.right else None,
                "bubble": [tr.bubble_lo, tr.bubble_hi],
                "plateau": [tr.plateau.omega_lo, tr.plateau.omega_hi],
            })
        if "svg" in emit:
            d = total_distortion(fmap).value
            with open(os.path.join(outdir, "trace.svg"), "w") as fh:
                fh.write(render_bubble_svg([tr], distortion=d))

    elif args.command == "weld":
        w = welding_constant(fmap, n_modes, args.m)
        _emit_json(outdir, "weld.json", w.to_json_dict())

    elif args.command == "sigma":
        _require(args, "pq")
        p, q = _parse_pq(args.pq)
        sd = sigma(fmap, p, q)
        _emit_json(outdir, "sigma.json", sd.to_json_dict())

    elif args.command == "tsujii":
        rows = tsujii_gap(fmap, args.depth)
        _emit_json(outdir, "tsujii.json", {
            "rows": [r.to_json_dict() for r in rows],
            "all_passed": all(r.passed for r in rows),
        })

    elif args.command == "atlas":
        traces = []
        rows = []
        for q in range(1, args.qmax + 1):
            for p in range(q):
                if math.gcd(p, q) != 1 and not (p == 0 and q == 1):
                    continue
                try:
                    tr = trace_bubble(fmap, p, q, samples=args.samples,
                                      classify=False, workers=args.workers)
                except NumericalError:
                    continue
                traces.append(tr)
                rows.extend(tr.csv_rows())
        if "csv" in emit:
            _emit_csv(outdir, "atlas.csv",
                      ("omega", "p", "q", "tau_re", "tau_im", "h", "angle", "err"),
                      rows)
        if "svg" in emit:
            d = total_distortion(fmap).value
            with open(os.path.join(outdir, "atlas.svg"), "w") as fh:
                fh.write(render_bubble_svg(traces, distortion=d))

    return 0


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return run(args)
    except ConfigError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"validation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
