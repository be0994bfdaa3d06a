"""Command-line front end.

Exit status: 0 on success, 1 when ``check`` finds a failing identity, 2 on
precondition errors, 3 on I/O errors.
"""
from __future__ import annotations

import argparse
import random
import sys
from collections.abc import Sequence

import numpy as np

from . import cosmo, harness, rivals, rotkit, shatir, timebase
from .errors import PreconditionError
from .sexagesimal import format_sex, parse_angle
from .sphere import wrap180

MODELS = ("shatir", "shatir3d", "shatir-planar", "ptolemy", "tusi", "urdi", "shirazi", "sadr")


def _angle(text: str) -> float:
    try:
        return parse_angle(text)
    except PreconditionError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _angle_list(text: str) -> list[float]:
    return [_angle(part) for part in text.split(",") if part.strip()]


def _add_time(p: argparse.ArgumentParser, single: bool = False) -> None:
    if single:
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--t", type=_angle, help="days since epoch")
        g.add_argument("--yz", help="Yazdegerd date Y/M/D[/E]")
    else:
        p.add_argument("--t0", type=_angle, help="first instant, days since epoch")
        p.add_argument("--t1", type=_angle, help="last instant (defaults to t0)")
        p.add_argument("--yz", help="Yazdegerd date Y/M/D[/E] used as t0")
        p.add_argument("--step", type=_angle, default=1.0, help="days between samples")


def _span(args) -> tuple[float, float]:
    if args.yz is not None:
        t0 = float(timebase.parse_yazdegerd(args.yz))
    elif args.t0 is not None:
        t0 = args.t0
    else:
        raise PreconditionError("give --t0 or --yz")
    return t0, args.t1 if args.t1 is not None else t0


def _model_options(args) -> dict:
    opts = {}
    if getattr(args, "tilts", None):
        opts["tilts"] = args.tilts
    if getattr(args, "interpolate", False):
        opts["interpolate"] = True
    return opts


def cmd_ephem(args, out) -> int:
    t0, t1 = _span(args)
    records = harness.ephemeris(args.body, args.model, t0, t1, args.step, **_model_options(args))
    print("t_days,body,lon_deg,lat_deg,dist", file=out)
    for rec in records:
        print(harness.format_record(rec), file=out)
    return 0


def cmd_table(args, out) -> int:
    places = args.places
    print("arg\tc1\tc2_near\tdifference\tchi", file=out)
    for row in shatir.generate_table(args.body, args.step):
        cells = [row.arg, row.c1, row.c2_near, row.difference, row.chi]
        print("\t".join(format_sex(c, places) for c in cells), file=out)
    return 0


def cmd_errors(args, out) -> int:
    with open(args.reference, encoding="utf-8", newline="") as fh:
        reference = harness.read_reference(fh)
    span = (args.t0, args.t1) if args.t0 is not None and args.t1 is not None else None
    table = harness.error_table(args.body, args.model, reference, args.thresholds, span,
                                **_model_options(args))
    print("threshold_deg\tfreq_lon\tfreq_lat", file=out)
    for th, fl, fb in zip(table.thresholds, table.longitude, table.latitude):
        print(f"{th:.6f}\t{fl:.6f}\t{fb:.6f}", file=out)
    print("quantile\tlon_err_deg\tlat_err_deg", file=out)
    for level in harness.TAB_LEVELS:
        lon = harness.quantile(table.lon_errors, level)
        lat = harness.quantile(table.lat_errors, level)
        print(f"{level:.2f}\t{lon:.6f}\t{lat:.6f}", file=out)
    return 0


def cmd_stations(args, out) -> int:
    t0, t1 = _span(args)
    stations = harness.find_stations(args.body, args.model, t0, t1, args.step, **_model_options(args))
    print("t_station\tkind", file=out)
    for st in stations:
        print(f"{st.t:.4f}\t{st.kind}", file=out)
    crit = harness.ratio_criterion(args.body)
    verdict = "retrogradation" if crit.retrogrades else "no retrogradation"
    print(f"# ratio criterion: motion {crit.motion_ratio:.4f} vs distance {crit.distance_ratio:.4f}: {verdict}",
          file=out)
    return 0


def cmd_cosmo(args, out) -> int:
    if args.errata:
        print("quantity\tprinted\tcorrected\tnote", file=out)
        for e in cosmo.errata():
            print(f"{e.quantity}\t{format_sex(e.printed, 4)}\t{format_sex(e.corrected, 4)}\t{e.note}", file=out)
        return 0
    if args.report:
        out.write(cosmo.report_tsv())
        return 0
    print("body\tinner\touter", file=out)
    for row in cosmo.nesting_chain().rows:
        print(f"{row.body}\t{cosmo.mixed(row.inner)}\t{cosmo.mixed(row.outer)}", file=out)
    return 0


def cmd_eqtime(args, out) -> int:
    t = args.t if args.t is not None else float(timebase.parse_yazdegerd(args.yz))
    hours = timebase.equation_of_time(t)
    print("t_days\thours\tminutes\thours_sex", file=out)
    print(f"{t:.6f}\t{hours:.9f}\t{hours * 60:.6f}\t{format_sex(hours, 3)}", file=out)
    return 0


def cmd_compare(args, out) -> int:
    if args.curve:
        t0, t1 = _span(args)
        print("t_days\tdelta_lon_deg", file=out)
        for t in harness.sample_times(t0, t1, args.step):
            a = rivals.rival_position(args.a, args.body, t, **rivals._comparison_options(args.a)).longitude
            b = rivals.rival_position(args.b, args.body, t, **rivals._comparison_options(args.b)).longitude
            print(f"{t:.6f}\t{wrap180(a - b):.9f}", file=out)
        return 0
    worst = rivals.equivalence_report(args.a, args.b, args.body, samples=args.samples, seed=args.seed)
    print(f"{args.a}\t{args.b}\t{args.body}\tmax_delta_deg\t{worst:.3e}", file=out)
    return 0


# -- check suite ---------------------------------------------------------------------

EQUIVALENCE_PAIRS = (
    [("shatir", "urdi", b) for b in shatir.SUPERIOR]
    + [("urdi", "tusi", b) for b in shatir.SUPERIOR]
    + [("tusi", "shirazi", b) for b in shatir.SUPERIOR]
    + [("tusi", "shirazi", "moon")]
)


def _random_vector(rng: random.Random, scale: float = 100.0) -> np.ndarray:
    return np.array([rng.uniform(-scale, scale) for _ in range(3)])


def _random_axis(rng: random.Random) -> np.ndarray:
    v = _random_vector(rng, 1.0)
    while np.linalg.norm(v) < 1e-3:
        v = _random_vector(rng, 1.0)
    return v / np.linalg.norm(v)


def proposition_residuals(samples: int, seed: int = 0) -> dict[str, float]:
    """Worst residual of each rotation identity over random configurations."""
    rng = random.Random(seed)
    worst = {"prop1": 0.0, "prop2": 0.0, "prop3": 0.0, "couple": 0.0}
    for _ in range(samples):
        axis = _random_axis(rng)
        a = rng.uniform(-360.0, 360.0)
        p1, p2, p3 = (_random_vector(rng) for _ in range(3))
        worst["prop1"] = max(worst["prop1"], rotkit.check_prop1(p1, p2, p3, p2 + (p3 - p1), a, axis))
        q1, q3, base = _random_vector(rng), _random_vector(rng), _random_vector(rng)
        base -= np.dot(base, axis) * axis  # the couple slides in the plane normal to the axis
        q2 = q1 + base
        q4, q5 = q3 - base, q3 + base
        worst["prop2"] = max(worst["prop2"], rotkit.check_prop2(q1, q2, q3, q4, q5, a, axis))
        worst["couple"] = max(worst["couple"], rotkit.couple_translation_residual(q1, q2, q3, q4, q5, a, axis))
        worst["prop3"] = max(worst["prop3"], rotkit.check_prop3(q1, q2, q1 - base, a, axis))
    return worst


def cmd_check(args, out) -> int:
    tolerance = args.tolerance
    failures = 0
    for name, residual in proposition_residuals(args.samples, args.seed).items():
        ok = residual < tolerance
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'}\t{name}\t{residual:.3e}", file=out)
    for a, b, body in EQUIVALENCE_PAIRS:
        worst = rivals.equivalence_report(a, b, body, samples=args.samples, seed=args.seed)
        ok = worst < tolerance
        failures += not ok
        print(f"{'PASS' if ok else 'FAIL'}\t{a}={b}:{body}\t{worst:.3e}", file=out)
    return 1 if failures else 0


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="falak", description="Rotation-chain planetary models.")
    sub = parser.add_subparsers(dest="command", required=True)

    def body_model(p, default_model="shatir3d"):
        p.add_argument("--body", required=True, type=str.lower, choices=shatir.BODIES)
        p.add_argument("--model", default=default_model, choices=MODELS)
        p.add_argument("--tilts", choices=shatir.TILT_MODES, help="small-orb tilts for the shatir models")
        p.add_argument("--interpolate", action="store_true", help="chi-interpolated c2 (shatir-planar)")

    p = sub.add_parser("ephem", help="positions over a time grid (CSV)")
    body_model(p)
    _add_time(p)
    p.set_defaults(func=cmd_ephem)

    p = sub.add_parser("table", help="equation table (TSV, sexagesimal)")
    p.add_argument("--body", required=True, type=str.lower, choices=shatir.BODIES)
    p.add_argument("--step", type=_angle, default=30.0, help="argument step in degrees")
    p.add_argument("--places", type=int, default=2)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("errors", help="cumulative error frequencies against a reference CSV")
    body_model(p)
    p.add_argument("--reference", required=True, help="CSV with header t_days,body,lon_deg,lat_deg[,dist]")
    p.add_argument("--thresholds", type=_angle_list, default=[1 / 6, 1 / 3, 0.5, 1.0, 2.0],
                   help="comma-separated degrees, sexagesimal allowed")
    p.add_argument("--t0", type=_angle, help="restrict to rows from t0")
    p.add_argument("--t1", type=_angle, help="restrict to rows up to t1")
    p.set_defaults(func=cmd_errors)

    p = sub.add_parser("stations", help="stationary points and the retrogradation criterion")
    body_model(p)
    _add_time(p)
    p.set_defaults(func=cmd_stations)

    p = sub.add_parser("cosmo", help="orb-system distances in Earth radii")
    p.add_argument("--report", action="store_true", help="full TSV with sexagesimal columns")
    p.add_argument("--errata", action="store_true", help="printed slips with recomputed values")
    p.set_defaults(func=cmd_cosmo)

    p = sub.add_parser("eqtime", help="equation of time")
    _add_time(p, single=True)
    p.set_defaults(func=cmd_eqtime)

    p = sub.add_parser("compare", help="largest longitude difference between two models")
    p.add_argument("--a", required=True, choices=MODELS)
    p.add_argument("--b", required=True, choices=MODELS)
    p.add_argument("--body", required=True, type=str.lower, choices=shatir.BODIES)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--curve", action="store_true", help="emit t, delta TSV over --t0/--t1/--step instead")
    _add_time(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("check", help="rotation identities and model equivalences")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
