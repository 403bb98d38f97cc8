"""Strict parsing of JSON job files into library objects.

Triple specs (``check``/``family`` subcommands)::

    {"kind": "family", "gamma": g, "A": .., "B": .., "C": .., "D": .., "lambda": .., "mu": .., "domain": {..}}
    {"kind": "m1", "gamma": g, "a": .., "b": .., "c": .., "d": .., "domain": {..}}
    {"kind": "piecewise", "ambient": {..}, "K": {..}, "lambda_star": .., "lambda_sup": ..,
     "A": .., "mu": .., "f_core": "<name>", "phi_out": "<name>"}
    {"kind": "constant", "c_f": .., "c_F": .., "phi": "<name>", "domain": {..}}

each optionally with ``"equation"`` (minus, plus, zero, delta_h, derivative)
and ``"h"``.  Function names come from :mod:`cauchymeans.catalog`.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from numbers import Real

from . import catalog
from .equality import AffineSpec, basis_pair, build_generators
from .errors import SpecError
from .families import (Equation, FamilyParams, M1Params, PiecewiseParams, build_constant, build_family,
                       build_m1, build_piecewise)
from .intervals import Interval
from .means import GeneratorPair, QAGenerator

_CHECK_KEYS = {"equation", "h"}
TRIPLE_KEYS = {
    "family": ({"gamma", "A", "B", "C", "D", "domain"}, {"lambda", "mu"} | _CHECK_KEYS),
    "m1": ({"gamma", "a", "b", "c", "d", "domain"}, _CHECK_KEYS),
    "piecewise": ({"ambient", "K", "lambda_star", "lambda_sup", "A", "mu", "f_core"}, {"phi_out"} | _CHECK_KEYS),
    "constant": ({"c_f", "c_F", "phi", "domain"}, _CHECK_KEYS),
}
MEAN_KEYS = {
    "cauchy": ({"G", "H", "x", "y"}, {"domain"}),
    "quasi_arithmetic": ({"phi", "x", "y"}, {"domain"}),
}
EQUALITY_KEYS = ({"phi", "domain", "gamma"}, {"G", "H", "affine"})
AFFINE_KEYS = ({"A", "B", "C", "D"}, {"mu", "lambda"})
REFLECT_KEYS = ({"J", "ambient"}, {"n", "S", "P"})


def load_json(path, exact: bool = False) -> dict:
    """Read a job file; with ``exact`` decimal literals become Fractions."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        obj = json.loads(text, parse_float=Fraction if exact else float)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(obj, dict):
        raise SpecError(f"{path}: top level must be an object")
    return obj


def check_keys(obj: dict, required: set, optional: set, where: str):
    keys = set(obj)
    missing = required - keys
    if missing:
        raise SpecError(f"{where}: missing keys {sorted(missing)}")
    extra = keys - required - optional
    if extra:
        raise SpecError(f"{where}: unknown keys {sorted(extra)}")


def number(obj: dict, key: str, default=None):
    v = obj.get(key, default)
    if isinstance(v, bool) or not isinstance(v, Real):
        raise SpecError(f"{key!r} must be a number, got {v!r}")
    return v


def _name(obj: dict, key: str) -> str:
    v = obj[key]
    if not isinstance(v, str):
        raise SpecError(f"{key!r} must be a function name string")
    return v


def kind_of(obj: dict, allowed) -> str:
    kind = obj.get("kind")
    if kind not in allowed:
        raise SpecError(f"'kind' must be one of {sorted(allowed)}, got {kind!r}")
    return kind


def parse_triple(obj: dict):
    """Return (triple, equation or None, h or None)."""
    kind = kind_of(obj, TRIPLE_KEYS)
    required, optional = TRIPLE_KEYS[kind]
    body = {k: v for k, v in obj.items() if k != "kind"}
    check_keys(body, required, optional, kind)
    if kind == "family":
        params = FamilyParams(float(number(body, "gamma")), *(number(body, k) for k in "ABCD"),
                              lam=number(body, "lambda", 0.0), mu=number(body, "mu", 0.0))
        triple = build_family(params, Interval.from_json(body["domain"]))
    elif kind == "m1":
        params = M1Params(float(number(body, "gamma")), *(number(body, k) for k in "abcd"))
        triple = build_m1(params, Interval.from_json(body["domain"]))
    elif kind == "piecewise":
        phi_out = catalog.lookup(_name(body, "phi_out")).fn if "phi_out" in body else None
        pw = PiecewiseParams(
            Interval.from_json(body["ambient"]), Interval.from_json(body["K"]),
            number(body, "lambda_star"), number(body, "lambda_sup"), number(body, "A"), number(body, "mu"),
            catalog.lookup(_name(body, "f_core")).fn, phi_out,
        )
        triple = build_piecewise(pw)
    else:
        triple = build_constant(number(body, "c_f"), number(body, "c_F"),
                                catalog.lookup(_name(body, "phi")).fn, Interval.from_json(body["domain"]))
    equation = None
    if "equation" in body:
        try:
            equation = Equation(body["equation"])
        except ValueError:
            raise SpecError(f"unknown equation {body['equation']!r}") from None
        if equation is Equation.EQUALITY:
            raise SpecError("use the 'equality' subcommand for mean equality")
    h = number(body, "h") if "h" in body else None
    return triple, equation, h


def _domain(body: dict):
    return Interval.from_json(body["domain"]) if "domain" in body else None


def parse_mean(obj: dict):
    """Return (kind, generator or generator pair, x, y)."""
    kind = kind_of(obj, MEAN_KEYS)
    body = {k: v for k, v in obj.items() if k != "kind"}
    check_keys(body, *MEAN_KEYS[kind], kind)
    x, y = float(number(body, "x")), float(number(body, "y"))
    if kind == "cauchy":
        pair = GeneratorPair.from_names(_name(body, "G"), _name(body, "H"), _domain(body))
        return "cauchy", pair, x, y
    gen = QAGenerator.from_name(_name(body, "phi"), _domain(body))
    return "quasi_arithmetic", gen, x, y


def parse_equality(obj: dict):
    """Return (pair, qa generator, gamma)."""
    kind_of(obj, {"equality"})
    body = {k: v for k, v in obj.items() if k != "kind"}
    check_keys(body, *EQUALITY_KEYS, "equality")
    domain = Interval.from_json(body["domain"])
    gamma = float(number(body, "gamma"))
    gen = QAGenerator.from_name(_name(body, "phi"), domain)
    named = "G" in body or "H" in body
    if named == ("affine" in body) or (named and not ("G" in body and "H" in body)):
        raise SpecError("equality: give either both 'G' and 'H' or an 'affine' block")
    if named:
        pair = GeneratorPair.from_names(_name(body, "G"), _name(body, "H"), domain)
    else:
        aff = body["affine"]
        if not isinstance(aff, dict):
            raise SpecError("'affine' must be an object")
        check_keys(aff, *AFFINE_KEYS, "affine")
        spec = AffineSpec(*(float(number(aff, k)) for k in "ABCD"),
                          mu=float(number(aff, "mu", 0.0)), lam=float(number(aff, "lambda", 0.0)))
        pair = build_generators(spec, basis_pair(gamma, gen), domain)
    return pair, gen, gamma


def parse_reflect(obj: dict):
    kind_of(obj, {"reflect"})
    body = {k: v for k, v in obj.items() if k != "kind"}
    check_keys(body, *REFLECT_KEYS, "reflect")
    n = body.get("n", 10)
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise SpecError("'n' must be a nonnegative integer")
    J, ambient = Interval.from_json(body["J"]), Interval.from_json(body["ambient"])
    if ("S" in body) != ("P" in body):
        raise SpecError("reflect: give both 'S' and 'P' or neither")
    SP = (Interval.from_json(body["S"]), Interval.from_json(body["P"])) if "S" in body else None
    return J, ambient, n, SP


def read_samples_csv(path):
    """Columns x, f, F, phi (header required, in that order)."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        text = fh.read()
    reader = csv.reader(io.StringIO(text))
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise SpecError(f"{path}: empty CSV") from None
    if header != ["x", "f", "F", "phi"]:
        raise SpecError(f"{path}: header must be x,f,F,phi, got {','.join(header)}")
    cols = ([], [], [], [])
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 4:
            raise SpecError(f"{path}:{lineno}: expected 4 fields")
        try:
            for col, val in zip(cols, row):
                col.append(float(val))
        except ValueError:
            raise SpecError(f"{path}:{lineno}: non-numeric field") from None
    return cols
