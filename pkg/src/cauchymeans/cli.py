"""Command-line driver: ``cauchymeans <subcommand> --spec FILE [options]``.

Exit status is 0 when every requested tolerance is met, 1 on a tolerance
failure and 2 on spec or I/O errors (with a JSON error record on stderr).
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import jobs
from .checker import cell_grid, scan_grid
from .equality import check_affine_relation, recover_parameters, verify_equality
from .errors import CauchyMeansError
from .intervals import reflect, reflection_closure, reflection_sequence
from .means import cauchy_mean, quasi_arithmetic_mean

SUBCOMMANDS = ("check", "mean", "equality", "recover", "reflect", "family")


def dumps(obj) -> str:
    """JSON with floats at 17 significant digits and infinities as strings."""
    return _encode(obj) + "\n"


def _encode(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, (float, Fraction, np.floating)):
        v = float(obj)
        if math.isnan(v):
            return "null"
        if math.isinf(v):
            return '"+inf"' if v > 0 else '"-inf"'
        return format(v, ".17g")
    if isinstance(obj, np.integer):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _num(v) -> str:
    return format(float(v), ".17g")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cauchymeans", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)
    helps = {
        "check": "residual report for a solution-triple spec",
        "mean": "evaluate one Cauchy or quasi-arithmetic mean",
        "equality": "test C_{G,H} = A_Phi and fit the affine relation",
        "recover": "recover family parameters from an x,f,F,phi CSV",
        "reflect": "reflection sequence and closure of intervals",
        "family": "sample a triple to CSV x,phi,f,F",
    }
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--spec", required=True, help="JSON job file (CSV samples for 'recover')")
        p.add_argument("--resolution", type=int, default=201)
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--pole-margin", type=float, default=1e-8)
        p.add_argument("--output", default="-", help="output path, '-' for stdout")
        p.add_argument("--format", choices=("json", "csv"), default="csv" if name == "family" else "json")
        if name == "check":
            p.add_argument("--exact", action="store_true",
                           help="read decimals as fractions and scan in rational arithmetic")
    return parser


def _validate(args):
    if args.resolution < 2:
        raise CauchyMeansError("--resolution must be at least 2")
    if not args.tol > 0:
        raise CauchyMeansError("--tol must be positive")
    if args.pole_margin < 0:
        raise CauchyMeansError("--pole-margin must be nonnegative")


def cmd_check(args, out):
    spec = jobs.load_json(args.spec, exact=args.exact)
    triple, equation, h = jobs.parse_triple(spec)
    rows = out if args.format == "csv" else None
    report = scan_grid(triple, equation, args.resolution, args.pole_margin, h=h,
                       exact=args.exact, csv_out=rows)
    passed = report.max_abs <= args.tol
    if args.format == "json":
        payload = {"kind": spec["kind"], "tag": triple.tag.value, "report": report.to_json(),
                   "tol": args.tol, "passed": passed}
        out.write(dumps(payload))
    return 0 if passed else 1


def cmd_mean(args, out):
    kind, gen, x, y = jobs.parse_mean(jobs.load_json(args.spec))
    value = cauchy_mean(gen, x, y, args.tol) if kind == "cauchy" else quasi_arithmetic_mean(gen, x, y)
    if args.format == "csv":
        out.write("x,y,mean\n" + f"{_num(x)},{_num(y)},{_num(value)}\n")
    else:
        out.write(dumps({"kind": kind, "generators": gen.name, "x": x, "y": y, "mean": value}))
    return 0


def cmd_equality(args, out):
    pair, gen, gamma = jobs.parse_equality(jobs.load_json(args.spec))
    report = verify_equality(pair, gen, args.resolution, args.tol)
    fit = check_affine_relation(pair, gen, gamma, args.resolution)
    passed = report.max_abs <= args.tol and fit.fit_residual <= args.tol
    payload = {"verify": report.to_json(), "affine_fit": fit.to_json(), "gamma": gamma,
               "tol": args.tol, "passed": passed}
    if args.format == "csv":
        out.write("max_abs,fit_residual,passed\n"
                  f"{_num(report.max_abs)},{_num(fit.fit_residual)},{'true' if passed else 'false'}\n")
    else:
        out.write(dumps(payload))
    return 0 if passed else 1


def cmd_recover(args, out):
    xs, f, F, phi = jobs.read_samples_csv(args.spec)
    rec = recover_parameters(xs, f, F, phi)
    passed = rec.max_function_discrepancy <= args.tol
    diag = rec.to_json()
    if args.format == "csv":
        out.write(",".join(diag) + "\n" + ",".join(
            v if isinstance(v, str) else _num(v) for v in diag.values()) + "\n")
    else:
        out.write(dumps(diag))
    return 0 if passed else 1


def cmd_reflect(args, out):
    J, ambient, n, SP = jobs.parse_reflect(jobs.load_json(args.spec, exact=True))
    seq = reflection_sequence(J, ambient, n)
    closure = reflection_closure(J, ambient)
    if args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["n", "lo", "hi", "lo_open", "hi_open", "empty"])
        for k, t in enumerate(seq.terms):
            w.writerow([k, _num(t.lower), _num(t.upper), t.lower_open, t.upper_open, t.empty])
        return 0
    payload = {"J": J.to_json(), "ambient": ambient.to_json(),
               "terms": [t.to_json() for t in seq.terms], "closure": closure.to_json()}
    if SP is not None:
        payload["reflect"] = reflect(SP[0], SP[1], ambient).to_json()
    out.write(dumps(payload))
    return 0


def cmd_family(args, out):
    triple, _, _ = jobs.parse_triple(jobs.load_json(args.spec))
    xs, _ = cell_grid(triple.domain, args.resolution)
    rows = []
    with np.errstate(all="ignore"):
        for x in xs:
            x = float(x)
            rows.append((x, float(triple.phi(x)), float(triple.f(x)), float(triple.F(x))))
    if args.format == "csv":
        out.write("x,phi,f,F\n")
        for r in rows:
            out.write(",".join(_num(v) for v in r) + "\n")
    else:
        out.write(dumps([{"x": x, "phi": p, "f": f, "F": F} for x, p, f, F in rows]))
    return 0


COMMANDS = {"check": cmd_check, "mean": cmd_mean, "equality": cmd_equality,
            "recover": cmd_recover, "reflect": cmd_reflect, "family": cmd_family}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _validate(args)
        if args.output == "-":
            return COMMANDS[args.subcommand](args, sys.stdout)
        with open(args.output, "w", encoding="utf-8", newline="") as out:
            return COMMANDS[args.subcommand](args, out)
    except (CauchyMeansError, OSError, ValueError, TypeError) as exc:
        sys.stderr.write(dumps({"error": type(exc).__name__, "message": str(exc)}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
