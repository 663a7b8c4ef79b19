"""Command-line front end.

Exit codes: 0 all checks pass, 1 a verification failed, 2 input or usage
error.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import gallery
from .errors import LoccError
from .fileio import (
    channel_to_dict,
    read_channel,
    read_state,
    state_to_dict,
    write_json,
)
from .majorization import convertible_order, partial_sum_table
from .states import schmidt_decompose
from .tensor_core import VERIFY_TOL

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _fmt(x: float) -> float:
    return float(round(max(float(x), 0.0), 12))


def cmd_schmidt(args) -> int:
    psi = read_state(args.path)
    lam = schmidt_decompose(psi).vector
    rank = int(np.count_nonzero(lam > args.tol))
    coeffs = [_fmt(x) for x in lam]
    if args.json:
        print(json.dumps({"coefficients": coeffs, "rank": rank}))
    else:
        print(f"coefficients: {coeffs}, rank: {rank}")
    return EXIT_OK


def cmd_convert_check(args) -> int:
    x = schmidt_decompose(read_state(args.path1)).vector
    y = schmidt_decompose(read_state(args.path2)).vector
    if convertible_order(x, y, args.tol):
        print("CONVERTIBLE")
        return EXIT_OK
    print("NOT CONVERTIBLE")
    print(f"{'l':>3}  {'E_l(source)':>14}  {'E_l(target)':>14}  ok")
    for l, ex, ey, ok in partial_sum_table(x, y, args.tol):
        print(f"{l:>3}  {ex:>14.10f}  {ey:>14.10f}  {'yes' if ok else 'NO'}")
    return EXIT_FAIL


def cmd_channel_verify(args) -> int:
    ch = read_channel(args.path)
    dA, dB = ch.dims_in
    ok = ch.defect <= args.tol * np.sqrt(dA * dB)
    print(f"kraus pairs: {len(ch)}")
    print(f"defect: {ch.defect:.6e}")
    print(f"trace-preserving: {'yes' if ok else 'no'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_export(args) -> int:
    if args.kind == "channel":
        obj = channel_to_dict(gallery.make_appendix_channel(args.r, args.encoding))
    else:
        obj = state_to_dict(gallery.make_state(args.kind, args.r, args.space))
    if args.output:
        write_json(obj, args.output)
    else:
        print(json.dumps(obj, indent=1))
    return EXIT_OK


def cmd_reproduce(args) -> int:
    reports = gallery.reproduce(r=args.r, p=args.p, q=args.q, samples=args.samples,
                                seed=args.seed, encoding=args.encoding)
    overall = all(rep.overall for rep in reports)
    if args.json:
        params = dict(r=args.r, p=args.p, q=args.q, samples=args.samples,
                      seed=args.seed, encoding=args.encoding)
        checks = []
        for rep in reports:
            for c in rep.checks:
                d = c.to_dict()
                d["name"] = f"{rep.title}: {d['name']}"
                checks.append(d)
        print(json.dumps({"params": params, "checks": checks, "overall": overall}, indent=1))
    else:
        print("\n\n".join(rep.render() for rep in reports))
        print(f"\nOverall: {'PASS' if overall else 'FAIL'}")
    return EXIT_OK if overall else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locc-ensembles",
        description="Schmidt/majorization checks, separable channels and the "
                    "mixed-state LOCC counterexample family.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("schmidt", help="squared Schmidt coefficients and rank of a state file")
    p.add_argument("path")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_schmidt)

    p = sub.add_parser("convert-check", help="Nielsen convertibility between two state files")
    p.add_argument("path1")
    p.add_argument("path2")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_convert_check)

    p = sub.add_parser("channel-verify", help="trace-preservation defect of a channel file")
    p.add_argument("path")
    p.add_argument("--tol", type=float, default=VERIFY_TOL,
                   help="relative threshold; ok iff defect <= tol*sqrt(dA*dB)")
    p.set_defaults(func=cmd_channel_verify)

    p = sub.add_parser("export", help="write a gallery state or channel as JSON")
    p.add_argument("--kind", required=True, choices=list(gallery.STATE_KINDS) + ["channel"])
    p.add_argument("--r", type=int, default=4)
    p.add_argument("--encoding", choices=gallery.ENCODINGS, default="corrected")
    p.add_argument("--space", choices=("rho", "sigma"), default=None,
                   help="local space for states (default: natural space of the kind)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("reproduce", help="run all three counterexample verifications")
    p.add_argument("--r", type=int, default=4)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--q", type=float, default=0.5)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--encoding", choices=gallery.ENCODINGS, default="corrected")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (LoccError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if args.command == "reproduce":
            parser.print_usage(sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
