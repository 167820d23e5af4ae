"""Command-line interface: check, slope, walk, scan-alpha.

Sequences are given either as a catalog name (``knill``,
``knill_family(0.7854)``, ...) or as a path to a sequence JSON file.  All
quantities are dimensionless; angles passed inside catalog names are in
radians.  Exit codes: 0 success, 1 verification failed, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .catalog import catalog, family_area_z, knill_family, verify
from .perturbation import perturbation_report, truncation_bound
from .sequences import ErrorModel, Sequence, SequenceFormatError, read_sequence
from .simulate import DEFAULT_POINTS, DEFAULT_SEED, default_probe_states, scaling_slope, slope_csv
from .walks import AMPLITUDE, DETUNING, sequence_walk, walk_csv, walk_svg


class InputError(Exception):
    """User input problem: maps to exit code 2."""


def load_sequence(source: str) -> Sequence:
    path = Path(source)
    looks_like_file = path.suffix == ".json" or path.exists() or "/" in source
    if looks_like_file:
        if not path.exists():
            raise InputError(f"sequence file not found: {source}")
        try:
            return read_sequence(path)
        except SequenceFormatError as exc:
            raise InputError(f"bad sequence file {source}: {exc}") from exc
    try:
        return catalog(source)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def parse_range(text: str) -> tuple[float, float]:
    try:
        lo_text, hi_text = text.split(":")
        return float(lo_text), float(hi_text)
    except ValueError as exc:
        raise InputError(f"range must look like lo:hi, got {text!r}") from exc


def parse_r0(text: str) -> np.ndarray:
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError as exc:
        raise InputError(f"--r0 must be three comma-separated numbers, got {text!r}") from exc
    if len(parts) != 3:
        raise InputError(f"--r0 must have three components, got {text!r}")
    v = np.array(parts)
    norm = np.linalg.norm(v)
    if norm == 0:
        raise InputError("--r0 must be a nonzero vector")
    return v / norm


def channels_for(choice: str) -> list[str]:
    return [AMPLITUDE, DETUNING] if choice == "both" else [choice]


def cmd_check(args) -> int:
    seq = load_sequence(args.sequence)
    reports = [verify(seq, ch) for ch in channels_for(args.channel)]
    payload = []
    for report in reports:
        print(report.summary())
        payload.append(
            {
                "sequence": report.name,
                "channel": report.channel,
                "first_order": report.first_order,
                "second_order": report.second_order,
                "order_certified": report.order_certified,
                "closure_residual": list(report.closure_residual),
                "vector_area": None if report.vector_area is None else list(report.vector_area),
                "preserved_axis": None if report.preserved_axis is None else list(report.preserved_axis),
                "slope": None if math.isnan(report.slope) else report.slope,
            }
        )
    if args.epsilon or args.delta:
        err = ErrorModel(epsilon=args.epsilon, delta=args.delta)
        pert = perturbation_report(seq, err)
        print(
            f"at epsilon={args.epsilon:g}, delta={args.delta:g}: "
            f"|r1'| = {np.linalg.norm(pert.r1):.3e}, |r2'| = {np.linalg.norm(pert.r2):.3e}, "
            f"series tail bound {truncation_bound(seq, err, 2):.3e}"
        )
    if args.out:
        Path(args.out).write_text(json.dumps(payload, indent=2) + "\n")
        print(f"wrote {args.out}")
    return 0 if all(r.first_order for r in reports) else 1


def cmd_slope(args) -> int:
    seq = load_sequence(args.sequence)
    lo, hi = parse_range(args.range)
    if args.r0 is not None:
        states = [parse_r0(args.r0)]
    else:
        states = default_probe_states(seed=args.seed)
    report = scaling_slope(seq, args.channel, r0_set=states, error_range=(lo, hi), n_points=args.points)
    if report.is_degenerate:
        print(f"{seq.name} {args.channel}: deviations at numerical floor; slope undefined")
    else:
        print(
            f"{seq.name} {args.channel}: slope {report.slope:.4f}, "
            f"intercept {report.intercept:.4f}, r^2 {report.r_squared:.6f}"
        )
    if args.out:
        Path(args.out).write_text(slope_csv(report))
        print(f"wrote {args.out}")
    return 0


def cmd_walk(args) -> int:
    seq = load_sequence(args.sequence)
    try:
        walk = sequence_walk(seq, args.channel)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    residual = np.linalg.norm(walk.closure_residual)
    state = "closed" if walk.is_closed else "open"
    print(f"{seq.name} {args.channel} walk: {len(walk.steps)} steps, {state} (|residual| = {residual:.3e})")
    out = args.out or f"{seq.name or 'sequence'}_{args.channel}_walk.{args.format}"
    text = walk_csv(walk) if args.format == "csv" else walk_svg(walk)
    Path(out).write_text(text)
    print(f"wrote {out}")
    return 0


def cmd_scan_alpha(args) -> int:
    lo, hi = parse_range(args.range)
    if args.points < 2:
        raise InputError("--points must be at least 2 for a scan")
    alphas = np.linspace(lo, hi, args.points)
    rows = ["alpha,residual,area_z"]
    previous = None
    crossings = []
    for alpha in alphas:
        walk = sequence_walk(knill_family(alpha), args.channel)
        residual = float(np.linalg.norm(walk.closure_residual))
        area_z = family_area_z(alpha, args.channel)
        rows.append(f"{alpha:.17g},{residual:.17g},{area_z:.17g}")
        if previous is not None and previous[1] * area_z < 0:
            a0, z0 = previous
            crossings.append(a0 + (alpha - a0) * z0 / (z0 - area_z))
        previous = (float(alpha), area_z)
    out = args.out or f"knill_family_scan_{args.channel}.csv"
    Path(out).write_text("\n".join(rows) + "\n")
    print(f"wrote {out}")
    if crossings:
        print("area zero crossings near: " + ", ".join(f"{c:.4f}" for c in crossings))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blochwalk",
        description="Design and verify error-suppressing composite pulse sequences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_sequence_arg(p):
        p.add_argument("sequence", help="catalog name or path to a sequence JSON file")

    p_check = sub.add_parser("check", help="verify first/second-order error suppression")
    add_sequence_arg(p_check)
    p_check.add_argument("--channel", choices=[AMPLITUDE, DETUNING, "both"], default="both")
    p_check.add_argument("--epsilon", type=float, default=0.0, help="amplitude error for the term report")
    p_check.add_argument("--delta", type=float, default=0.0, help="detuning error for the term report")
    p_check.add_argument("--out", help="write a JSON report here")
    p_check.set_defaults(func=cmd_check)

    p_slope = sub.add_parser("slope", help="measure the error-scaling exponent")
    add_sequence_arg(p_slope)
    p_slope.add_argument("--channel", choices=[AMPLITUDE, DETUNING], required=True)
    p_slope.add_argument("--range", default="1e-4:1e-2", help="error range lo:hi")
    p_slope.add_argument("--points", type=int, default=DEFAULT_POINTS)
    p_slope.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for the random probe states")
    p_slope.add_argument("--r0", help="single initial state x,y,z instead of the worst case")
    p_slope.add_argument("--out", help="write the (error, deviation) table as CSV")
    p_slope.set_defaults(func=cmd_slope)

    p_walk = sub.add_parser("walk", help="export the error-integral walk")
    add_sequence_arg(p_walk)
    p_walk.add_argument("--channel", choices=[AMPLITUDE, DETUNING], required=True)
    p_walk.add_argument("--format", choices=["csv", "svg"], default="csv")
    p_walk.add_argument("--out", help="output path (default derived from the sequence name)")
    p_walk.set_defaults(func=cmd_walk)

    p_scan = sub.add_parser("scan-alpha", help="scan the Knill family parameter")
    p_scan.add_argument("--channel", choices=[AMPLITUDE, DETUNING], required=True)
    p_scan.add_argument("--range", default=f"{-math.pi}:{math.pi}", help="alpha range lo:hi (radians)")
    p_scan.add_argument("--points", type=int, default=181)
    p_scan.add_argument("--out", help="output CSV path")
    p_scan.set_defaults(func=cmd_scan_alpha)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
