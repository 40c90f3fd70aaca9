"""Command-line entry point with machine-readable JSON/CSV output.

Subcommands: classify, indicial, residual, identity-defect, spectrum,
kg-spectrum, contrast, oracle3d.  Exit codes: 0 success, 1 domain error
(fall to center, empty window, ...), 2 usage error.  All diagnostics go to
stderr, all data to the chosen sink; floats are printed at 12 significant
digits so identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys

import numpy as np

from .deltaprobe import identity_defect_away_from_origin, numeric_delta_residual
from .errors import PotentialParseError, RadialGateError
from .indicial import admissibility, indicial_exponents, parse_policy
from .oracle3d import CartesianGrid, RadialProfile, lowest_eigenvalues_3d, point_defect_3d
from .potentials import (
    RadialGrid,
    Regular,
    StronglySingular,
    TransitiveSingular,
    classify_origin,
    parse_potential,
)
from .solver import bound_states, kg_bound_states, policy_contrast, solve_wavefunction

PROFILES = {
    "const": lambda r: np.ones_like(r),
    "linear": lambda r: np.asarray(r, dtype=float).copy(),
    "cos": np.cos,
    "exp": lambda r: np.exp(-np.asarray(r, dtype=float)),
    "one-plus-r2": lambda r: 1.0 + np.asarray(r, dtype=float) ** 2,
    "r-exp": lambda r: np.asarray(r, dtype=float) * np.exp(-np.asarray(r, dtype=float)),
}


def _fmt(x) -> str:
    return f"{x:.12g}"


def _round12(obj):
    if isinstance(obj, float):
        return float(_fmt(obj))
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def _parse_grid(text: str) -> RadialGrid:
    parts = text.split(",")
    if len(parts) != 3:
        raise PotentialParseError(f"--grid expects rmin,rmax,n, got {text!r}")
    try:
        return RadialGrid(float(parts[0]), float(parts[1]), int(parts[2]))
    except ValueError:
        raise PotentialParseError(f"--grid has non-numeric field in {text!r}") from None


def _parse_window(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise PotentialParseError(f"--window expects lo,hi, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise PotentialParseError(f"--window has non-numeric field in {text!r}") from None


def _emit(args, payload: dict, table: tuple[list[str], list[list]] | None):
    if args.format == "json":
        text = json.dumps(_round12(payload), indent=2) + "\n"
    else:
        header, rows = table if table is not None else _flat_table(payload)
        buf = io.StringIO()
        buf.write(",".join(header) + "\n")
        for row in rows:
            buf.write(",".join(_fmt(c) if isinstance(c, float) else str(c) for c in row) + "\n")
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _flat_table(payload: dict):
    keys = list(payload.keys())
    return keys, [[payload[k] for k in keys]]


def _parse_flag(flag, parser_fn, value):
    try:
        return parser_fn(value)
    except PotentialParseError as exc:
        raise PotentialParseError(f"{flag}: {exc}") from None


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (payload, csv_table or None)
# ---------------------------------------------------------------------------


def _cmd_classify(args):
    p = _parse_flag("--potential", parse_potential, args.potential)
    oc = classify_origin(p)
    payload = {"potential": args.potential}
    if isinstance(oc, Regular):
        payload["origin_class"] = "regular"
    elif isinstance(oc, TransitiveSingular):
        payload["origin_class"] = "transitive_singular"
        payload["v0"] = oc.v0
    elif isinstance(oc, StronglySingular):
        payload["origin_class"] = "strongly_singular"
        payload["n"] = oc.n
        payload["g"] = oc.g
    return payload, None


def _cmd_indicial(args):
    p = _parse_flag("--potential", parse_potential, args.potential)
    report = indicial_exponents(classify_origin(p), args.l, args.mass)
    if report.fall_to_center:
        raise RadialGateError(
            "fall to center: 2 m v0 exceeds (l + 1/2)^2, exponents are complex"
        )
    report = admissibility(report, _parse_flag("--policy", parse_policy, args.policy))
    payload = {"potential": args.potential, "l": args.l, "mass": args.mass}
    payload.update(report.to_dict())
    return payload, None


def _residual_series(args, f):
    grid = _parse_grid(args.grid)
    rows = []
    report = None
    for _ in range(max(args.halvings, 1)):
        r = grid.nodes()
        report = numeric_delta_residual(f(r), grid, args.probe_radius,
                                        convention=args.convention)
        rows.append([report.grid_spacing, report.integral, report.relative_error])
        grid = RadialGrid(grid.r_min, grid.r_max, 2 * grid.n_points - 1)
    return report, rows


def _cmd_residual(args):
    f = PROFILES[args.profile]
    report, rows = _residual_series(args, f)
    payload = {"profile": args.profile, **report.to_dict()}
    return payload, (["h", "integral", "relative_error"], rows)


def _cmd_identity_defect(args):
    f = PROFILES[args.profile]
    grid = _parse_grid(args.grid)
    rows = []
    defect = None
    for _ in range(max(args.halvings, 1)):
        r = grid.nodes()
        defect = identity_defect_away_from_origin(f(r), grid, args.r_low)
        rows.append([grid.spacing, defect])
        grid = RadialGrid(grid.r_min, grid.r_max, 2 * grid.n_points - 1)
    payload = {
        "profile": args.profile,
        "r_low": args.r_low,
        "grid_spacing": rows[0][0],
        "max_defect": rows[0][1],
        "finest_grid_spacing": rows[-1][0],
        "finest_max_defect": rows[-1][1],
    }
    return payload, (["h", "max_defect"], rows)


def _spectrum_table(spec):
    rows = [[e.k, e.energy, e.node_count, e.bisection_width] for e in spec.entries]
    return ["k", "energy", "node_count", "bisection_width"], rows


def _dump_wavefunction(args, spec, equation):
    if not args.dump_wavefunction:
        return
    k_str, path = args.dump_wavefunction
    k = int(k_str)
    entry = next((e for e in spec.entries if e.k == k), None)
    if entry is None:
        raise RadialGateError(f"spectrum has no entry k = {k}")
    p = _parse_flag("--potential", parse_potential, args.potential)
    grid = _parse_grid(args.grid)
    u = solve_wavefunction(
        p, args.l, args.mass, _parse_flag("--policy", parse_policy, args.policy), entry.energy, grid,
        equation=equation,
    )
    r = grid.nodes()
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("r,u\n")
        for ri, ui in zip(r, u):
            fh.write(f"{_fmt(ri)},{_fmt(ui)}\n")


def _cmd_spectrum(args):
    p = _parse_flag("--potential", parse_potential, args.potential)
    spec = bound_states(
        p, args.l, args.mass, _parse_flag("--policy", parse_policy, args.policy),
        _parse_window(args.window), args.k, _parse_grid(args.grid),
    )
    _dump_wavefunction(args, spec, "schrodinger")
    return spec.to_dict(), _spectrum_table(spec)


def _cmd_kg_spectrum(args):
    p = _parse_flag("--potential", parse_potential, args.potential)
    spec = kg_bound_states(
        p, args.l, args.mass, _parse_flag("--policy", parse_policy, args.policy),
        _parse_window(args.window), args.k, _parse_grid(args.grid),
    )
    _dump_wavefunction(args, spec, "klein_gordon")
    return spec.to_dict(), _spectrum_table(spec)


def _cmd_contrast(args):
    p = _parse_flag("--potential", parse_potential, args.potential)
    try:
        thetas = [float(t) for t in args.thetas.split(",") if t]
    except ValueError:
        raise PotentialParseError(f"--thetas has non-numeric entry in {args.thetas!r}") from None
    spectra = policy_contrast(
        p, args.l, args.mass, thetas, _parse_grid(args.grid),
        _parse_window(args.window), r_ref=args.rref, k_max=args.k,
    )
    payload = {
        "potential": args.potential,
        "reference": spectra[0].to_dict(),
        "mixed": [
            {"theta": theta, "spectrum": spec.to_dict()}
            for theta, spec in zip(thetas, spectra[1:])
        ],
    }
    rows = []
    for e in spectra[0].entries:
        rows.append(["dirichlet", e.k, e.energy, e.node_count, e.bisection_width])
    for theta, spec in zip(thetas, spectra[1:]):
        for e in spec.entries:
            rows.append([_fmt(theta), e.k, e.energy, e.node_count, e.bisection_width])
    return payload, (["theta", "k", "energy", "node_count", "bisection_width"], rows)


def _cmd_oracle3d(args):
    grid = CartesianGrid(half_width=args.L, n_per_axis=args.n)
    if args.point_defect:
        f = PROFILES[args.point_defect]
        r_max = math.sqrt(3.0) * (args.L + 2.0 * grid.spacing)
        profile = RadialProfile.from_callable(f, r_max)
        defect = point_defect_3d(profile, grid)
        payload = {
            "profile": args.point_defect,
            "L": args.L,
            "n": args.n,
            "u0": profile.u0,
            "defect": defect,
            "predicted": -4.0 * math.pi * profile.u0,
        }
        return payload, None
    p = _parse_flag("--potential", parse_potential, args.potential)
    result = lowest_eigenvalues_3d(p, args.mass, grid, args.k)
    rows = [[i + 1, ev, res] for i, (ev, res) in
            enumerate(zip(result.eigenvalues, result.residuals))]
    return result.to_dict(), (["k", "eigenvalue", "residual"], rows)


# ---------------------------------------------------------------------------


def _add_common(sub):
    sub.add_argument("--format", choices=("json", "csv"), default="json")
    sub.add_argument("--output", "-o", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radialgate",
        description="Origin boundary-condition laboratory for the radial"
        " Schrodinger equation",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("classify", help="origin classification of a potential")
    sp.add_argument("--potential", required=True)
    _add_common(sp)

    sp = subs.add_parser("indicial", help="indicial exponents and admissibility")
    sp.add_argument("--potential", required=True)
    sp.add_argument("--l", type=int, default=0)
    sp.add_argument("--mass", type=float, default=1.0)
    sp.add_argument("--policy", default="dirichlet")
    _add_common(sp)

    sp = subs.add_parser("residual", help="small-sphere delta-defect integral")
    sp.add_argument("--profile", choices=sorted(PROFILES), default="const")
    sp.add_argument("--grid", default="1e-4,0.12,1201", help="rmin,rmax,n")
    sp.add_argument("--probe-radius", type=float, default=0.1)
    sp.add_argument("--halvings", type=int, default=3,
                    help="number of grid refinements in the CSV table")
    sp.add_argument("--convention", choices=("4pi", "2pi"), default="4pi")
    _add_common(sp)

    sp = subs.add_parser("identity-defect",
                         help="pointwise operator defect away from the origin")
    sp.add_argument("--profile", choices=sorted(PROFILES), default="cos")
    sp.add_argument("--grid", default="0.3,2.0,1701", help="rmin,rmax,n")
    sp.add_argument("--r-low", type=float, default=0.5)
    sp.add_argument("--halvings", type=int, default=3)
    _add_common(sp)

    for name, helptext, default_grid in (
        ("spectrum", "bound states of the radial equation", "1e-4,80,20000"),
        ("kg-spectrum", "bound states of the Klein-Gordon mode", "1e-3,60,60000"),
    ):
        sp = subs.add_parser(name, help=helptext)
        sp.add_argument("--potential", required=True)
        sp.add_argument("--l", type=int, default=0)
        sp.add_argument("--mass", type=float, default=1.0)
        sp.add_argument("--policy", default="dirichlet")
        sp.add_argument("--grid", default=default_grid, help="rmin,rmax,n")
        sp.add_argument("--window", required=True, help="Elo,Ehi")
        sp.add_argument("--k", type=int, default=1, help="max states")
        sp.add_argument("--dump-wavefunction", nargs=2, metavar=("K", "FILE"))
        _add_common(sp)

    sp = subs.add_parser("contrast",
                         help="Dirichlet vs square-integrable-only spectra")
    sp.add_argument("--potential", required=True)
    sp.add_argument("--l", type=int, default=0)
    sp.add_argument("--mass", type=float, default=1.0)
    sp.add_argument("--thetas", required=True, help="comma list of mixing angles")
    sp.add_argument("--rref", type=float, default=1.0)
    sp.add_argument("--grid", default="0.05,10,8000", help="rmin,rmax,n")
    sp.add_argument("--window", required=True, help="Elo,Ehi")
    sp.add_argument("--k", type=int, default=1)
    _add_common(sp)

    sp = subs.add_parser("oracle3d", help="direct 3D Cartesian eigenvalues/defect")
    sp.add_argument("--potential", default="harmonic:omega=1")
    sp.add_argument("--mass", type=float, default=1.0)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--L", type=float, required=True)
    sp.add_argument("--k", type=int, default=1)
    sp.add_argument("--point-defect", choices=sorted(PROFILES), default=None,
                    help="compute the central-cell defect of a named profile"
                    " instead of eigenvalues")
    _add_common(sp)

    return parser


_HANDLERS = {
    "classify": _cmd_classify,
    "indicial": _cmd_indicial,
    "residual": _cmd_residual,
    "identity-defect": _cmd_identity_defect,
    "spectrum": _cmd_spectrum,
    "kg-spectrum": _cmd_kg_spectrum,
    "contrast": _cmd_contrast,
    "oracle3d": _cmd_oracle3d,
}


#: flags whose value may begin with '-' (negative numbers, comma lists);
#: fused into --flag=value form so argparse does not mistake them for options
_NEGATIVE_VALUE_FLAGS = {
    "--window", "--grid", "--thetas", "--probe-radius", "--r-low",
    "--rref", "--mass",
}


def _fuse_negative_values(argv):
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _NEGATIVE_VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(tok + "=" + argv[i + 1])
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    argv = _fuse_negative_values(list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the usage message
        return 0 if exc.code in (0, None) else 2
    try:
        payload, table = _HANDLERS[args.command](args)
    except PotentialParseError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except RadialGateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(args, payload, table)
    return 0


if __name__ == "__main__":
    sys.exit(run())
