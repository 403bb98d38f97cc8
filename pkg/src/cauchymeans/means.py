"""Two-variable quasi-arithmetic and Cauchy means."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np

from . import catalog
from .errors import BracketFailure, DegenerateH, GeneratorError, InvalidDomain, OutOfDomain
from .intervals import Interval
from .rootfind import bracketed_root

VALIDATION_POINTS = 256
DIAGONAL_GUARD = 1e-9
DEFAULT_TOL = 1e-13
_EPS = np.finfo(float).eps


def sample_points(domain: Interval, n: int = VALIDATION_POINTS) -> np.ndarray:
    """``n`` increasing interior points of ``domain`` (also for unbounded ones)."""
    if domain.empty or domain.is_singleton:
        raise InvalidDomain(f"cannot sample {domain}")
    t = (np.arange(n) + 0.5) / n
    lo, hi = float(domain.lower), float(domain.upper)
    if math.isfinite(lo) and math.isfinite(hi):
        return lo + t * (hi - lo)
    if math.isfinite(lo):
        return lo + t / (1 - t)
    if math.isfinite(hi):
        return hi - (1 - t) / t
    return np.tan(np.pi * (t - 0.5))


def _strict_direction(values: np.ndarray) -> int:
    d = np.diff(values)
    if np.all(d > 0):
        return 1
    if np.all(d < 0):
        return -1
    return 0


@dataclass(frozen=True)
class QAGenerator:
    """Strictly monotone generator of a quasi-arithmetic mean.

    Without ``phi_inv`` the mean is computed by bisection on ``phi_fn``
    between the two arguments.  ``derivative`` is needed only by the
    equality analyzer.
    """

    domain: Interval
    phi_fn: Callable
    phi_inv: Optional[Callable] = None
    derivative: Optional[Callable] = None
    name: str = "custom"
    direction: int = field(default=0, init=False)

    def __post_init__(self):
        xs = sample_points(self.domain)
        with np.errstate(all="ignore"):
            vals = np.array([float(self.phi_fn(x)) for x in xs])
        if not np.all(np.isfinite(vals)):
            raise GeneratorError(f"{self.name}: generator not finite on {self.domain}")
        direction = _strict_direction(vals)
        if direction == 0:
            raise GeneratorError(f"{self.name}: generator is not strictly monotone on {self.domain}")
        object.__setattr__(self, "direction", direction)
        if self.phi_inv is not None:
            back = np.array([float(self.phi_inv(v)) for v in vals])
            err = np.abs(back - xs) / np.maximum(1.0, np.abs(xs))
            if not np.all(err <= 1e-12):
                raise GeneratorError(f"{self.name}: supplied inverse does not invert the generator")

    @classmethod
    def from_name(cls, name: str, domain: Optional[Interval] = None) -> "QAGenerator":
        entry = catalog.lookup(name)
        if entry.inverse is None:
            raise GeneratorError(f"{name} is not invertible")
        dom = entry.domain if domain is None else domain
        if not dom.issubset(entry.domain):
            raise InvalidDomain(f"{name} is defined on {entry.domain}, not on {dom}")
        return cls(dom, entry.fn, entry.inverse, entry.d1, entry.name)

    def __call__(self, x):
        return self.phi_fn(x)

    def invert(self, v, lo: float, hi: float, tol: float = DEFAULT_TOL) -> float:
        if self.phi_inv is not None:
            return float(self.phi_inv(v))
        return bracketed_root(lambda u: float(self.phi_fn(u)) - v, lo, hi, tol)


@dataclass(frozen=True)
class GeneratorPair:
    """Generators (G, H) of a Cauchy mean with their derivatives."""

    domain: Interval
    G: Callable
    H: Callable
    G1: Callable
    H1: Callable
    name: str = "custom"

    def __post_init__(self):
        xs = sample_points(self.domain)
        with np.errstate(all="ignore"):
            h1 = np.array([float(self.H1(x)) for x in xs])
            g1 = np.array([float(self.G1(x)) for x in xs])
        if not (np.all(np.isfinite(h1)) and np.all(np.isfinite(g1))):
            raise GeneratorError(f"{self.name}: derivatives not finite on {self.domain}")
        if not (np.all(h1 > 0) or np.all(h1 < 0)):
            raise GeneratorError(f"{self.name}: H' vanishes or changes sign on {self.domain}")
        if _strict_direction(g1 / h1) == 0:
            raise GeneratorError(f"{self.name}: G'/H' is not strictly monotone on {self.domain}")

    @classmethod
    def from_names(cls, g_name: str, h_name: str, domain: Optional[Interval] = None) -> "GeneratorPair":
        g, h = catalog.lookup(g_name), catalog.lookup(h_name)
        natural = g.domain & h.domain
        dom = natural if domain is None else domain
        if not dom.issubset(natural):
            raise InvalidDomain(f"{g_name}/{h_name} are defined on {natural}, not on {dom}")
        return cls(dom, g.fn, h.fn, g.d1, h.d1, f"{g.name}/{h.name}")

    def ratio(self, u):
        return self.G1(u) / self.H1(u)


def _check_args(domain: Interval, x, y):
    if x not in domain or y not in domain:
        raise OutOfDomain(f"({x!r}, {y!r}) not in {domain}")


def quasi_arithmetic_mean(gen: QAGenerator, x: float, y: float) -> float:
    """Phi^{-1}((Phi(x) + Phi(y)) / 2)."""
    _check_args(gen.domain, x, y)
    if x == y:
        return x
    target = (float(gen.phi_fn(x)) + float(gen.phi_fn(y))) / 2
    lo, hi = min(x, y), max(x, y)
    m = gen.invert(target, lo, hi)
    # inverse rounding may step just outside [lo, hi]
    return min(max(m, lo), hi)


def cauchy_mean(pair: GeneratorPair, x: float, y: float, tol: float = DEFAULT_TOL) -> float:
    """Solve (G'/H')(u) = (G(x) - G(y)) / (H(x) - H(y)) for u between x and y."""
    _check_args(pair.domain, x, y)
    if x == y:
        return x
    if abs(x - y) < DIAGONAL_GUARD * max(1.0, abs(x)):
        return (x + y) / 2
    gx, gy = float(pair.G(x)), float(pair.G(y))
    hx, hy = float(pair.H(x)), float(pair.H(y))
    dh = hx - hy
    if dh == 0 or not math.isfinite(dh):
        raise DegenerateH(f"H(x) - H(y) = {dh!r} for x={x!r}, y={y!r}")
    r = (gx - gy) / dh
    lo, hi = min(x, y), max(x, y)
    glo = float(pair.ratio(lo)) - r
    ghi = float(pair.ratio(hi)) - r
    if glo != 0 and ghi != 0 and (glo > 0) == (ghi > 0):
        # r carries cancellation error from both differences; allow that much slack
        slack = 16 * _EPS * ((abs(gx) + abs(gy)) + abs(r) * (abs(hx) + abs(hy))) / abs(dh) + 16 * _EPS * abs(r)
        if min(abs(glo), abs(ghi)) <= slack:
            return lo if abs(glo) <= abs(ghi) else hi
        raise BracketFailure(
            f"G'/H' - r has the same sign at both ends of [{lo!r}, {hi!r}] ({glo!r}, {ghi!r})")
    return bracketed_root(lambda u: float(pair.ratio(u)) - r, lo, hi, tol, glo, ghi)


@dataclass(frozen=True)
class MeanValueReport:
    ok: bool
    worst: float
    argworst: Optional[Tuple[float, float]]
    points: int


def mean_value_property_check(mean: Callable, domain: Interval, resolution: int = 101,
                              tol: float = 1e-12) -> MeanValueReport:
    """Check min(x,y) <= M(x,y) <= max(x,y) on a cell grid, strictly when |x-y| > 10 tol.

    ``worst`` is the largest of min - M and M - max over the grid (0 on the
    diagonal of a mean, negative elsewhere); the check fails on a positive
    value or on a non-strict value off the diagonal.
    """
    xs = sample_points(domain, resolution)
    ok = True
    worst, arg = -math.inf, None
    for x in xs:
        for y in xs:
            x, y = float(x), float(y)
            m = mean(x, y)
            lo, hi = min(x, y), max(x, y)
            v = max(lo - m, m - hi)
            if not (v <= 0):
                ok = False
            elif abs(x - y) > 10 * tol and not (lo < m < hi):
                ok = False
            if not (v <= worst):
                worst, arg = v, (x, y)
    return MeanValueReport(ok, float(worst), arg, resolution)
