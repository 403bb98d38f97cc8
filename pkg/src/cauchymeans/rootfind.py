"""Bracketed scalar root finding (bisection with secant steps) and sign scans."""
from __future__ import annotations

import math

import numpy as np

from .errors import BracketFailure

MAX_ITER = 200


def bracketed_root(g, lo: float, hi: float, tol: float, glo=None, ghi=None, maxiter: int = MAX_ITER) -> float:
    """Find a zero of ``g`` in ``[lo, hi]`` where g(lo), g(hi) differ in sign.

    A secant (false-position) candidate is taken when it falls inside the
    bracket and the previous step shrank the bracket by at least half;
    otherwise the step is a plain bisection.  Iteration stops once the
    bracket is no wider than ``tol`` or cannot be split in floating point.
    """
    if lo > hi:
        lo, hi = hi, lo
        glo, ghi = ghi, glo
    glo = g(lo) if glo is None else glo
    ghi = g(hi) if ghi is None else ghi
    if glo == 0:
        return lo
    if ghi == 0:
        return hi
    if (glo > 0) == (ghi > 0):
        raise BracketFailure(f"no sign change on [{lo!r}, {hi!r}]: g={glo!r}, {ghi!r}")
    width = hi - lo
    for _ in range(maxiter):
        if hi - lo <= tol:
            return 0.5 * (lo + hi)
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            # adjacent floats
            return lo if abs(glo) <= abs(ghi) else hi
        x = mid
        if hi - lo <= 0.5 * width:
            s = hi - ghi * (hi - lo) / (ghi - glo)
            if lo < s < hi:
                x = s
        width = hi - lo
        gx = g(x)
        if gx == 0:
            return x
        if (gx > 0) == (glo > 0):
            lo, glo = x, gx
        else:
            hi, ghi = x, gx
    raise BracketFailure(f"no convergence after {maxiter} iterations on [{lo!r}, {hi!r}]")


def find_roots_on_closure(fn, lo: float, hi: float, n: int = 1024, tol: float = 1e-14) -> list:
    """Locate zeros of ``fn`` on the closed interval ``[lo, hi]``.

    ``fn`` is sampled at ``n`` equispaced points including both ends; exact
    zeros and sign changes between neighbours are refined by bisection.
    """
    xs = np.linspace(lo, hi, n)
    with np.errstate(all="ignore"):
        ys = np.array([float(fn(x)) for x in xs])
    roots = []
    for k, y in enumerate(ys):
        if y == 0 or not math.isfinite(y):
            roots.append(float(xs[k]))
    sign = np.sign(ys)
    for k in range(n - 1):
        if sign[k] * sign[k + 1] < 0:
            roots.append(bracketed_root(fn, float(xs[k]), float(xs[k + 1]), tol, ys[k], ys[k + 1]))
    return sorted(roots)
