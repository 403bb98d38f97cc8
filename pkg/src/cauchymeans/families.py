"""Constructors for solution triples (phi, f, F).

The minus-sign equation  phi((x+y)/2) (f(x) - f(y)) = F(x) - F(y)  is solved by

* three smooth families (trigonometric / polynomial / hyperbolic),
* a piecewise family where f is constant on both tails of a closed K and
  phi equals a constant A on (I + K)/2, with F = A f + mu,
* constant f and F with arbitrary phi.

``build_m1`` gives the two-function families of the plus-sign equation
phi((x+y)/2) (f(x) + f(y)) = F(x) + F(y).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .errors import InvalidDomain, InvalidParams, MissingDerivatives, NotSubinterval, PoleInDomain, ZeroInDomain
from .intervals import Interval, midset
from .rootfind import find_roots_on_closure

GAMMA_ZERO = 1e-12
SCAN_POINTS = 1024


class Tag(str, Enum):
    TRIG = "TrigFamily"
    POLY = "PolyFamily"
    HYPER = "HyperFamily"
    PIECEWISE = "Piecewise"
    CONSTANT = "Constant"
    EXTERNAL = "External"


class Equation(str, Enum):
    MINUS = "minus"
    PLUS = "plus"
    ZERO = "zero"
    DELTA_H = "delta_h"
    DERIVATIVE = "derivative"
    EQUALITY = "equality"


@dataclass(frozen=True)
class FamilyParams:
    gamma: float
    A: float
    B: float
    C: float
    D: float
    lam: float = 0.0
    mu: float = 0.0

    def __post_init__(self):
        if self.A * self.D - self.B * self.C == 0:
            raise InvalidParams("family parameters need AD != BC")

    @property
    def case(self) -> Tag:
        return sign_case(self.gamma)


@dataclass(frozen=True)
class M1Params:
    gamma: float
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if self.a * self.d - self.b * self.c == 0:
            raise InvalidParams("plus-family parameters need ad != bc")


@dataclass(frozen=True)
class PiecewiseParams:
    ambient: Interval
    K: Interval
    lambda_star: float
    lambda_sup: float
    A: float
    mu: float
    f_core: Callable
    phi_out: Optional[Callable] = None


@dataclass(frozen=True)
class FunctionTriple:
    """Evaluable (phi, f, F) on ``domain``.

    ``f1``/``f2`` are f' and f'', ``F1`` is F'.  ``phi_den`` is the
    denominator of phi when phi is a ratio (used for pole margins).
    ``equation`` says which functional equation the triple is meant to solve.
    """

    domain: Interval
    phi: Callable
    f: Callable
    F: Callable
    f1: Optional[Callable] = None
    f2: Optional[Callable] = None
    F1: Optional[Callable] = None
    tag: Tag = Tag.EXTERNAL
    equation: Equation = Equation.MINUS
    phi_den: Optional[Callable] = None
    params: object = field(default=None, compare=False)

    @property
    def has_derivatives(self) -> bool:
        return self.f1 is not None


def sign_case(gamma: float) -> Tag:
    if abs(gamma) < GAMMA_ZERO:
        return Tag.POLY
    return Tag.TRIG if gamma < 0 else Tag.HYPER


def _check_scan_domain(domain: Interval):
    if domain.empty or domain.is_singleton:
        raise InvalidDomain(f"domain {domain} must be a nondegenerate interval")
    if not domain.bounded:
        raise InvalidDomain(f"domain {domain} must be bounded for the pole scan")


def _reject_roots(fn, domain: Interval, what, exc, scan_points: int):
    roots = find_roots_on_closure(fn, float(domain.lower), float(domain.upper), scan_points)
    if roots:
        raise exc(f"{what} vanishes at x={float(roots[0])!r} in the closure of {domain}")


def family_functions(params: FamilyParams) -> dict:
    """Closed forms of (phi, f, F, f', f'', F', denominator of phi) for ``params``."""
    A, B, C, D, lam, mu = params.A, params.B, params.C, params.D, params.lam, params.mu
    case = params.case
    if case is Tag.TRIG:
        w = math.sqrt(-params.gamma)

        def f(x):
            return -A * np.cos(w * x) + B * np.sin(w * x) + lam

        def F(x):
            return -C * np.cos(w * x) + D * np.sin(w * x) + mu

        def den(x):
            return A * np.sin(w * x) + B * np.cos(w * x)

        def num(x):
            return C * np.sin(w * x) + D * np.cos(w * x)

        def f1(x):
            return w * den(x)

        def f2(x):
            return w * w * (A * np.cos(w * x) - B * np.sin(w * x))

        def F1(x):
            return w * num(x)

    elif case is Tag.HYPER:
        w = math.sqrt(params.gamma)

        def f(x):
            return A * np.cosh(w * x) + B * np.sinh(w * x) + lam

        def F(x):
            return C * np.cosh(w * x) + D * np.sinh(w * x) + mu

        def den(x):
            return A * np.sinh(w * x) + B * np.cosh(w * x)

        def num(x):
            return C * np.sinh(w * x) + D * np.cosh(w * x)

        def f1(x):
            return w * den(x)

        def f2(x):
            return w * w * (A * np.cosh(w * x) + B * np.sinh(w * x))

        def F1(x):
            return w * num(x)

    else:
        def f(x):
            return A * x * x / 2 + B * x + lam

        def F(x):
            return C * x * x / 2 + D * x + mu

        def den(x):
            return A * x + B

        def num(x):
            return C * x + D

        f1 = den

        def f2(x):
            return A + 0 * x

        F1 = num

    def phi(x):
        return num(x) / den(x)

    return {"phi": phi, "f": f, "F": F, "f1": f1, "f2": f2, "F1": F1, "den": den}


def build_family(params: FamilyParams, domain: Interval, scan_points: int = SCAN_POINTS) -> FunctionTriple:
    """Smooth solution triple for the sign case of ``params.gamma``.

    Raises :class:`PoleInDomain` when the denominator of phi has a zero on
    the closure of ``domain``.
    """
    _check_scan_domain(domain)
    fns = family_functions(params)
    _reject_roots(fns["den"], domain, "denominator of phi", PoleInDomain, scan_points)
    return FunctionTriple(domain, fns["phi"], fns["f"], fns["F"], fns["f1"], fns["f2"], fns["F1"],
                          params.case, Equation.MINUS, fns["den"], params)


def build_m1(params: M1Params, domain: Interval, scan_points: int = SCAN_POINTS) -> FunctionTriple:
    """Plus-equation triple with F = phi * f; f must not vanish on the closure."""
    _check_scan_domain(domain)
    a, b, c, d = params.a, params.b, params.c, params.d
    case = sign_case(params.gamma)
    if case is Tag.TRIG:
        w = math.sqrt(-params.gamma)

        def f(x):
            return a * np.sin(w * x) + b * np.cos(w * x)

        def F(x):
            return c * np.sin(w * x) + d * np.cos(w * x)

        def f1(x):
            return w * (a * np.cos(w * x) - b * np.sin(w * x))

        def F1(x):
            return w * (c * np.cos(w * x) - d * np.sin(w * x))

        def f2(x):
            return -w * w * f(x)

    elif case is Tag.HYPER:
        w = math.sqrt(params.gamma)

        def f(x):
            return a * np.sinh(w * x) + b * np.cosh(w * x)

        def F(x):
            return c * np.sinh(w * x) + d * np.cosh(w * x)

        def f1(x):
            return w * (a * np.cosh(w * x) + b * np.sinh(w * x))

        def F1(x):
            return w * (c * np.cosh(w * x) + d * np.sinh(w * x))

        def f2(x):
            return w * w * f(x)

    else:
        def f(x):
            return a * x + b

        def F(x):
            return c * x + d

        def f1(x):
            return a + 0 * x

        def F1(x):
            return c + 0 * x

        def f2(x):
            return 0 * x

    def phi(x):
        return F(x) / f(x)

    _reject_roots(f, domain, "f", ZeroInDomain, scan_points)
    return FunctionTriple(domain, phi, f, F, f1, f2, F1, case, Equation.PLUS, f, params)


def _relatively_closed(K: Interval, I: Interval) -> bool:
    """K is closed in the subspace topology of I."""
    if K.empty:
        return False
    lo_ok = not K.lower_open or (K.lower == I.lower and I.lower_open)
    hi_ok = not K.upper_open or (K.upper == I.upper and I.upper_open)
    return lo_ok and hi_ok


def _pointwise(scalar_fn):
    def fn(x):
        if isinstance(x, np.ndarray):
            return np.array([scalar_fn(v) for v in x.ravel()]).reshape(x.shape)
        return scalar_fn(x)

    fn.__wrapped__ = scalar_fn
    return fn


def build_piecewise(pw: PiecewiseParams) -> FunctionTriple:
    """Triple of the piecewise family; satisfies the minus equation exactly."""
    I, K = pw.ambient, pw.K
    if I.empty:
        raise InvalidDomain("ambient interval is empty")
    if not K.issubset(I):
        raise NotSubinterval(f"K={K} is not contained in I={I}")
    if not _relatively_closed(K, I):
        raise InvalidParams(f"K={K} must be nonempty and closed in I={I}")
    core, outside = pw.f_core, pw.phi_out
    lam_lo, lam_hi, A, mu = pw.lambda_star, pw.lambda_sup, pw.A, pw.mu
    plateau = midset(I, K)

    @_pointwise
    def f(x):
        if x < K.lower:
            return lam_lo
        if x > K.upper:
            return lam_hi
        return core(x)

    @_pointwise
    def phi(x):
        if x in plateau or outside is None:
            return A
        return outside(x)

    @_pointwise
    def F(x):
        return A * f(x) + mu

    return FunctionTriple(I, phi, f, F, tag=Tag.PIECEWISE, equation=Equation.MINUS, params=pw)


def build_constant(c_f, c_F, phi: Callable, domain: Interval) -> FunctionTriple:
    def f(x):
        return c_f + 0 * x

    def F(x):
        return c_F + 0 * x

    def zero(x):
        return 0 * x

    return FunctionTriple(domain, phi, f, F, zero, zero, zero, Tag.CONSTANT, Equation.MINUS,
                          params=(c_f, c_F))


@dataclass(frozen=True)
class OdeClassification:
    gamma_est: float
    max_defect: float
    lam_est: Optional[float]


def ode_classify(triple: FunctionTriple, grid) -> OdeClassification:
    """Fit f'' = gamma (f - lambda) on ``grid`` by least squares on (f, 1).

    The smooth families have f' and F' solving Y'' = gamma Y, which is the
    same as f'' = gamma (f - lambda).  ``max_defect`` is the worst pointwise
    misfit of that linear relation.
    """
    if triple.f2 is None:
        raise MissingDerivatives("ode_classify needs the analytic second derivative f''")
    xs = np.asarray(grid, dtype=float)
    if xs.size < 3:
        raise InvalidParams("need at least 3 grid points")
    fx = np.broadcast_to(np.asarray(triple.f(xs), dtype=float), xs.shape)
    f2x = np.broadcast_to(np.asarray(triple.f2(xs), dtype=float), xs.shape)
    spread = np.max(np.abs(fx - fx.mean()))
    if spread <= 1e-12 * max(1.0, float(np.max(np.abs(fx)))):
        gamma, c = 0.0, float(f2x.mean())
    else:
        design = np.column_stack([fx, np.ones_like(fx)])
        (gamma, c), *_ = np.linalg.lstsq(design, f2x, rcond=None)
        if abs(gamma) < GAMMA_ZERO:
            gamma, c = 0.0, float(f2x.mean())
    defect = float(np.max(np.abs(f2x - gamma * fx - c)))
    lam = -c / gamma if gamma != 0 else None
    return OdeClassification(float(gamma), defect, lam)
