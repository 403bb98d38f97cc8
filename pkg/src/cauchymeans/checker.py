"""Residuals of the minus/plus/zero equations and of the two reductions.

Grids are cell-centred: ``resolution`` points ``lo + (i + 1/2) step`` per axis,
so open endpoints are never evaluated.  The midpoint of grid points i and j
is the half-step point with index ``i + j``, so phi is only evaluated on
``2 * resolution - 1`` points and the n x n reduction runs in
:mod:`cauchymeans.kernels`.
"""
from __future__ import annotations

import csv as _csv
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from . import kernels
from .errors import EmptyShrunkDomain, InvalidDomain, InvalidParams, MissingDerivatives, OutOfDomain
from .families import Equation, FunctionTriple
from .intervals import Interval, shrink

DEFAULT_RESOLUTION = 201
DEFAULT_POLE_MARGIN = 1e-8


@dataclass(frozen=True)
class ResidualReport:
    max_abs: float
    argmax: Optional[Tuple[float, float]]
    grid_points: int
    skipped: int
    equation: Equation
    domain: Optional[Interval] = None
    h: Optional[float] = None

    def to_json(self) -> dict:
        out = {
            "equation": self.equation.value,
            "max_abs": self.max_abs,
            "argmax": None if self.argmax is None else [self.argmax[0], self.argmax[1]],
            "grid_points": self.grid_points,
            "skipped": self.skipped,
        }
        if self.domain is not None:
            out["domain"] = self.domain.to_json()
        if self.h is not None:
            out["h"] = self.h
        return out


def _in_domain(triple_domain: Interval, *pts):
    for p in pts:
        if p not in triple_domain:
            raise OutOfDomain(f"{p!r} is outside {triple_domain}")


def residual_minus(triple: FunctionTriple, x, y):
    """phi((x+y)/2) (f(x) - f(y)) - (F(x) - F(y))."""
    _in_domain(triple.domain, x, y)
    return triple.phi((x + y) / 2) * (triple.f(x) - triple.f(y)) - (triple.F(x) - triple.F(y))


def residual_plus(triple: FunctionTriple, x, y):
    """phi((x+y)/2) (f(x) + f(y)) - (F(x) + F(y))."""
    _in_domain(triple.domain, x, y)
    return triple.phi((x + y) / 2) * (triple.f(x) + triple.f(y)) - (triple.F(x) + triple.F(y))


def residual_zero(phi, f, x, y, domain: Optional[Interval] = None):
    """phi((x+y)/2) (f(x) - f(y))."""
    if domain is not None:
        _in_domain(domain, x, y)
    return phi((x + y) / 2) * (f(x) - f(y))


# ---------------------------------------------------------------------
# grids
# ---------------------------------------------------------------------

def cell_grid(domain: Interval, resolution: int, exact: bool = False):
    """Cell-centred points and the half-step midpoint lattice of ``domain``."""
    if resolution < 2:
        raise InvalidParams("resolution must be at least 2")
    if domain.empty or domain.is_singleton or not domain.bounded:
        raise InvalidDomain(f"cannot grid {domain}")
    lo, hi = domain.lower, domain.upper
    n = resolution
    if exact:
        lo, hi = Fraction(lo), Fraction(hi)
        xs = [lo + (hi - lo) * Fraction(2 * i + 1, 2 * n) for i in range(n)]
        mids = [lo + (hi - lo) * Fraction(k + 1, 2 * n) for k in range(2 * n - 1)]
        return xs, mids
    lo, hi = float(lo), float(hi)
    step = (hi - lo) / n
    xs = lo + (np.arange(n) + 0.5) * step
    mids = lo + (np.arange(2 * n - 1) + 1.0) * (step / 2)
    return xs, mids


def _values(fn, xs, mask=None):
    """Evaluate ``fn`` on a float array; masked entries are NaN and never computed."""
    out = np.full(xs.shape, np.nan)
    keep = np.ones(xs.shape, bool) if mask is None else ~mask
    pts = xs[keep]
    with np.errstate(all="ignore"):
        try:
            vals = np.asarray(fn(pts), dtype=float)
            vals = np.broadcast_to(vals, pts.shape)
        except (TypeError, ValueError, ZeroDivisionError):
            vals = np.array([_safe_call(fn, p) for p in pts], dtype=float)
    out[keep] = vals
    return out


def _safe_call(fn, p):
    try:
        return float(fn(float(p)))
    except (ZeroDivisionError, OverflowError, ValueError):
        return math.nan


def _pole_mask(triple: FunctionTriple, pts, margin: float):
    if triple.phi_den is None or margin <= 0:
        return np.zeros(pts.shape, bool)
    with np.errstate(all="ignore"):
        den = np.abs(np.asarray(triple.phi_den(pts), dtype=float))
    den = np.broadcast_to(den, pts.shape)
    return ~(den >= margin)


def _operands(triple: FunctionTriple, equation: Equation, xs, mids, margin, h):
    """(P, u, w, sign, mid_skip, pt_skip) for the selected residual."""
    mid_skip = _pole_mask(triple, mids, margin)
    P = _values(triple.phi, mids, mid_skip)
    no_skip = np.zeros(xs.shape, bool)
    if equation is Equation.MINUS:
        return P, _values(triple.f, xs), _values(triple.F, xs), -1, mid_skip, no_skip
    if equation is Equation.PLUS:
        return P, _values(triple.f, xs), _values(triple.F, xs), 1, mid_skip, no_skip
    if equation is Equation.ZERO:
        return P, _values(triple.f, xs), np.zeros(xs.shape), -1, mid_skip, no_skip
    pt_skip = _pole_mask(triple, xs, margin)
    phi_x = _values(triple.phi, xs, pt_skip)
    if equation is Equation.DELTA_H:
        u = _values(triple.f, xs + h) - _values(triple.f, xs - h)
    elif equation is Equation.DERIVATIVE:
        u = _values(triple.f1, xs)
    else:
        raise InvalidParams(f"scan_grid does not handle {equation}")
    return P, u, phi_x * u, 1, mid_skip, pt_skip


def _exact_call(fn, x):
    # transcendental pieces cannot take a Fraction; those values fall back to floats
    try:
        return fn(x)
    except (TypeError, AttributeError):
        return float(fn(float(x)))


def _exact_operands(triple: FunctionTriple, equation: Equation, xs, mids, h):
    P = [_exact_call(triple.phi, m) for m in mids]
    if equation is Equation.MINUS:
        return P, [triple.f(x) for x in xs], [triple.F(x) for x in xs], -1
    if equation is Equation.PLUS:
        return P, [triple.f(x) for x in xs], [triple.F(x) for x in xs], 1
    if equation is Equation.ZERO:
        return P, [triple.f(x) for x in xs], [0] * len(xs), -1
    if equation is Equation.DELTA_H:
        u = [triple.f(x + h) - triple.f(x - h) for x in xs]
    elif equation is Equation.DERIVATIVE:
        u = [triple.f1(x) for x in xs]
    else:
        raise InvalidParams(f"scan_grid does not handle {equation}")
    return P, u, [_exact_call(triple.phi, x) * v for x, v in zip(xs, u)], 1


def _reduce_exact(P, u, w, sign):
    n = len(u)
    best, bi, bj = None, -1, -1
    for i in range(n):
        for j in range(n):
            r = abs(P[i + j] * (u[i] + sign * u[j]) - (w[i] + sign * w[j]))
            if best is None or r > best:
                best, bi, bj = r, i, j
    return best, bi, bj


def _scan_domain(triple: FunctionTriple, equation: Equation, h):
    if equation is Equation.DELTA_H:
        if h is None or not h > 0:
            raise InvalidParams("the delta_h check needs h > 0")
        inner = shrink(triple.domain, h)
        if inner.empty or inner.is_singleton:
            raise EmptyShrunkDomain(f"{triple.domain} shrunk by {h} is empty")
        return inner
    if equation is Equation.DERIVATIVE and triple.f1 is None:
        raise MissingDerivatives("derivative check needs the analytic f'")
    return triple.domain


def scan_grid(triple: FunctionTriple, equation: Optional[Equation] = None,
              resolution: int = DEFAULT_RESOLUTION, pole_margin: float = DEFAULT_POLE_MARGIN,
              h=None, exact: bool = False, csv_out=None, backend: Optional[str] = None) -> ResidualReport:
    """Max absolute residual of ``equation`` over the resolution x resolution grid.

    ``equation`` defaults to the one the triple was built for.  Pairs whose
    phi-denominator (at the midpoint, and at x, y for the reductions) is
    below ``pole_margin`` are skipped and counted.  ``exact=True`` runs the
    scan in rational arithmetic (no pole margin), for triples built from
    rational data.  ``csv_out`` receives ``x,y,residual`` rows.
    """
    equation = Equation(equation) if equation is not None else triple.equation
    if pole_margin < 0:
        raise InvalidParams("pole_margin must be nonnegative")
    dom = _scan_domain(triple, equation, h)
    xs, mids = cell_grid(dom, resolution, exact=exact)
    if exact:
        hh = Fraction(h) if h is not None else None
        P, u, w, sign = _exact_operands(triple, equation, xs, mids, hh)
        best, i, j = _reduce_exact(P, u, w, sign)
        if csv_out is not None:
            _write_rows(csv_out, xs, [[P[a + b] * (u[a] + sign * u[b]) - (w[a] + sign * w[b])
                                       for b in range(len(xs))] for a in range(len(xs))], None)
        return ResidualReport(best, (xs[i], xs[j]), resolution, 0, equation, dom, h)
    P, u, w, sign, mid_skip, pt_skip = _operands(triple, equation, xs, mids, pole_margin, h)
    best, i, j, skipped = kernels.grid_max_residual(P, u, w, sign, mid_skip, pt_skip, backend=backend)
    if csv_out is not None:
        k = np.add.outer(np.arange(resolution), np.arange(resolution))
        with np.errstate(all="ignore"):
            R = P[k] * (u[:, None] + sign * u[None, :]) - (w[:, None] + sign * w[None, :])
        skip = mid_skip[k] | pt_skip[:, None] | pt_skip[None, :]
        _write_rows(csv_out, xs, R, skip)
    argmax = None if i < 0 else (float(xs[i]), float(xs[j]))
    return ResidualReport(best, argmax, resolution, skipped, equation, dom, h)


def _write_rows(stream, xs, R, skip):
    writer = _csv.writer(stream, lineterminator="\n")
    writer.writerow(["x", "y", "residual"])
    n = len(xs)
    for a in range(n):
        for b in range(n):
            if skip is not None and skip[a, b]:
                continue
            writer.writerow([_num(xs[a]), _num(xs[b]), _num(R[a][b])])


def _num(v) -> str:
    return format(float(v), ".17g")


def delta_reduction_check(triple: FunctionTriple, h, resolution: int = DEFAULT_RESOLUTION,
                          pole_margin: float = DEFAULT_POLE_MARGIN, exact: bool = False,
                          backend: Optional[str] = None) -> ResidualReport:
    """Plus-equation residual of (phi, delta_h f, phi * delta_h f) on I_h."""
    return scan_grid(triple, Equation.DELTA_H, resolution, pole_margin, h=h, exact=exact, backend=backend)


def derivative_reduction_check(triple: FunctionTriple, resolution: int = DEFAULT_RESOLUTION,
                               pole_margin: float = DEFAULT_POLE_MARGIN,
                               backend: Optional[str] = None) -> ResidualReport:
    """Plus-equation residual of (phi, f', phi * f') on the domain."""
    return scan_grid(triple, Equation.DERIVATIVE, resolution, pole_margin, backend=backend)
