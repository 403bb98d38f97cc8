"""Seeded random fixtures shared by the unit and acceptance tests."""
from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np

from cauchymeans import FamilyParams, Interval, M1Params, PiecewiseParams
from cauchymeans.families import family_functions

MIN_DET = 0.1
# pole-free means the denominator of phi stays this far from 0 on the closed domain
MIN_DEN = 0.2
DOMAIN_WIDTH = 1.5


def _coeffs(rng: random.Random):
    while True:
        A, B, C, D = (rng.uniform(-2, 2) for _ in range(4))
        if abs(A * D - B * C) >= MIN_DET:
            return A, B, C, D


def _closure_grid(lo, hi, n=2001):
    return np.linspace(lo, hi, n)


def random_family(rng: random.Random, gamma: float):
    """(params, domain) with |AD - BC| >= 0.1 and |den| >= 0.2 on the closed domain."""
    while True:
        A, B, C, D = _coeffs(rng)
        params = FamilyParams(gamma, A, B, C, D, rng.uniform(-1, 1), rng.uniform(-1, 1))
        c = rng.uniform(-2, 2)
        lo, hi = c - DOMAIN_WIDTH / 2, c + DOMAIN_WIDTH / 2
        den = family_functions(params)["den"](_closure_grid(lo, hi))
        if np.min(np.abs(den)) >= MIN_DEN:
            return params, Interval.open(lo, hi)


def family_fixtures(seed: int = 2024, per_gamma: int = 20):
    rng = random.Random(seed)
    return [(g,) + random_family(rng, g) for g in (-1.0, 0.0, 1.0) for _ in range(per_gamma)]


def _m1_f(p: M1Params, xs):
    if p.gamma < 0:
        w = math.sqrt(-p.gamma)
        return p.a * np.sin(w * xs) + p.b * np.cos(w * xs)
    if p.gamma > 0:
        w = math.sqrt(p.gamma)
        return p.a * np.sinh(w * xs) + p.b * np.cosh(w * xs)
    return p.a * xs + p.b


def random_m1(rng: random.Random, gamma: float):
    while True:
        a, b, c, d = _coeffs(rng)
        p = M1Params(gamma, a, b, c, d)
        ctr = rng.uniform(-2, 2)
        lo, hi = ctr - DOMAIN_WIDTH / 2, ctr + DOMAIN_WIDTH / 2
        if np.min(np.abs(_m1_f(p, _closure_grid(lo, hi)))) >= MIN_DEN:
            return p, Interval.open(lo, hi)


def m1_fixtures(seed: int = 7, per_gamma: int = 5):
    rng = random.Random(seed)
    return [(g,) + random_m1(rng, g) for g in (-1.0, 0.0, 1.0) for _ in range(per_gamma)]


def _rat(rng: random.Random, lo: int = -20, hi: int = 20, den: int = 7) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def _core_square(x):
    return x * x


def _outside_reciprocal(x):
    return 1 / x


def random_piecewise(rng: random.Random, distinct_levels: bool = True) -> PiecewiseParams:
    """Rational piecewise fixture on I = (0, beta) with closed K strictly inside."""
    beta = Fraction(rng.randint(4, 12))
    cuts = sorted({Fraction(rng.randint(1, 8 * int(beta) - 1), 8) for _ in range(6)})
    k0, k1 = cuts[0], cuts[-1]
    lam_lo = _rat(rng)
    lam_hi = _rat(rng)
    while distinct_levels and lam_hi == lam_lo:
        lam_hi = _rat(rng)
    return PiecewiseParams(
        Interval.open(Fraction(0), beta), Interval.closed(k0, k1),
        lam_lo, lam_hi, _rat(rng), _rat(rng), _core_square, _outside_reciprocal,
    )


def piecewise_fixtures(seed: int = 11, count: int = 10, distinct_levels: bool = True):
    rng = random.Random(seed)
    return [random_piecewise(rng, distinct_levels) for _ in range(count)]


def random_subinterval_pair(rng: random.Random):
    """Rational open (J, I) with J a proper open subinterval of I."""
    while True:
        pts = sorted(Fraction(rng.randint(-400, 400), rng.randint(1, 12)) for _ in range(4))
        alpha, a0, b0, beta = pts
        if alpha < a0 < b0 < beta:
            return Interval.open(a0, b0), Interval.open(alpha, beta)
