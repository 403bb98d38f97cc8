"""Equality of Cauchy and quasi-arithmetic means, and recovery of family parameters.

C_{G,H} = A_Phi on J exactly when (G, H) is an invertible affine image of a
basis pair (psi1, psi2) built from Phi:

    gamma < 0:  (cos(w Phi), sin(w Phi)),  w = sqrt(-gamma)
    gamma = 0:  (Phi**2, Phi)
    gamma > 0:  (cosh(w Phi), sinh(w Phi)), w = sqrt(gamma)
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .checker import ResidualReport
from .errors import DegenerateFit, InsufficientSamples, InvalidParams, SingularFit
from .families import Equation, FamilyParams, Tag, family_functions, sign_case
from .intervals import Interval
from .means import GeneratorPair, QAGenerator, cauchy_mean, quasi_arithmetic_mean, sample_points

SINGULAR_COND = 1e12
NORMAL_EQ_COND = 1e8
DEGENERATE_DET = 1e-10


@dataclass(frozen=True)
class AffineSpec:
    A: float
    B: float
    C: float
    D: float
    mu: float = 0.0
    lam: float = 0.0

    def __post_init__(self):
        if self.det == 0:
            raise InvalidParams("affine matrix must be invertible (AD != BC)")

    @property
    def det(self) -> float:
        return self.A * self.D - self.B * self.C


@dataclass(frozen=True)
class BasisPair:
    gamma: float
    phi_gen: QAGenerator
    psi1: Callable
    psi2: Callable
    dpsi1: Callable
    dpsi2: Callable


def basis_pair(gamma: float, phi_gen: QAGenerator) -> BasisPair:
    if phi_gen.derivative is None:
        raise InvalidParams("the basis pair needs Phi with an analytic derivative")
    P, dP = phi_gen.phi_fn, phi_gen.derivative
    case = sign_case(gamma)
    if case is Tag.TRIG:
        w = math.sqrt(-gamma)
        return BasisPair(gamma, phi_gen,
                         lambda x: np.cos(w * P(x)), lambda x: np.sin(w * P(x)),
                         lambda x: -w * np.sin(w * P(x)) * dP(x), lambda x: w * np.cos(w * P(x)) * dP(x))
    if case is Tag.HYPER:
        w = math.sqrt(gamma)
        return BasisPair(gamma, phi_gen,
                         lambda x: np.cosh(w * P(x)), lambda x: np.sinh(w * P(x)),
                         lambda x: w * np.sinh(w * P(x)) * dP(x), lambda x: w * np.cosh(w * P(x)) * dP(x))
    return BasisPair(gamma, phi_gen,
                     lambda x: P(x) * P(x), P,
                     lambda x: 2 * P(x) * dP(x), dP)


def build_generators(spec: AffineSpec, basis: BasisPair, domain: Optional[Interval] = None) -> GeneratorPair:
    """G = A psi1 + B psi2 + mu, H = C psi1 + D psi2 + lam.

    Raises :class:`~cauchymeans.errors.GeneratorError` when H' vanishes or
    G'/H' is not strictly monotone on ``domain``.
    """
    A, B, C, D, mu, lam = spec.A, spec.B, spec.C, spec.D, spec.mu, spec.lam
    p1, p2, d1, d2 = basis.psi1, basis.psi2, basis.dpsi1, basis.dpsi2
    dom = basis.phi_gen.domain if domain is None else domain
    return GeneratorPair(
        dom,
        lambda x: A * p1(x) + B * p2(x) + mu,
        lambda x: C * p1(x) + D * p2(x) + lam,
        lambda x: A * d1(x) + B * d2(x),
        lambda x: C * d1(x) + D * d2(x),
        name=f"affine(gamma={basis.gamma:g})",
    )


def verify_equality(pair: GeneratorPair, gen: QAGenerator, resolution: int = 101,
                    tol: float = 1e-10) -> ResidualReport:
    """Max |C_{G,H}(x,y) - A_Phi(x,y)| over the off-diagonal cell grid."""
    if resolution < 2:
        raise InvalidParams("resolution must be at least 2")
    xs = [float(x) for x in sample_points(pair.domain, resolution)]
    best, arg = -1.0, None
    for i, x in enumerate(xs):
        for j in range(i + 1, len(xs)):
            y = xs[j]
            d = abs(cauchy_mean(pair, x, y, tol / 10) - quasi_arithmetic_mean(gen, x, y))
            if not d <= best:
                best, arg = d, (x, y)
    return ResidualReport(max(best, 0.0), arg, resolution, 0, Equation.EQUALITY, pair.domain)


# ---------------------------------------------------------------------
# least squares
# ---------------------------------------------------------------------

def _lstsq(design: np.ndarray, rhs: np.ndarray):
    """Normal equations on column-equilibrated data; QR beyond cond 1e8."""
    scale = np.linalg.norm(design, axis=0)
    if np.any(scale == 0):
        raise SingularFit("basis has an identically zero column")
    X = design / scale
    gram = X.T @ X
    cond = np.linalg.cond(gram)
    if not cond <= SINGULAR_COND:
        raise SingularFit(f"basis Gram matrix is numerically singular (cond {cond:.3g})")
    if cond > NORMAL_EQ_COND:
        coef, *_ = np.linalg.lstsq(X, rhs, rcond=None)
    else:
        coef = np.linalg.solve(gram, X.T @ rhs)
    return coef / scale, float(cond)


@dataclass(frozen=True)
class AffineFit:
    spec: AffineSpec
    fit_residual: float
    gram_cond: float

    def to_json(self) -> dict:
        s = self.spec
        return {"A": s.A, "B": s.B, "C": s.C, "D": s.D, "mu": s.mu, "lambda": s.lam,
                "det": s.det, "fit_residual": self.fit_residual}


def check_affine_relation(pair: GeneratorPair, gen: QAGenerator, gamma: float,
                          resolution: int = 101) -> AffineFit:
    """Least-squares fit of G and H against {psi1, psi2, 1} for this gamma."""
    if resolution < 6:
        raise InvalidParams("need at least 6 sample points for 6 unknowns")
    basis = basis_pair(gamma, gen)
    xs = sample_points(pair.domain, resolution)
    design = np.column_stack([basis.psi1(xs), basis.psi2(xs), np.ones_like(xs)])
    G = np.asarray(pair.G(xs), dtype=float)
    H = np.asarray(pair.H(xs), dtype=float)
    (A, B, mu), cond = _lstsq(design, G)
    (C, D, lam), _ = _lstsq(design, H)
    resid = max(np.max(np.abs(design @ [A, B, mu] - G)), np.max(np.abs(design @ [C, D, lam] - H)))
    if A * D - B * C == 0:
        raise DegenerateFit("fitted affine matrix is singular")
    return AffineFit(AffineSpec(float(A), float(B), float(C), float(D), float(mu), float(lam)),
                     float(resid), cond)


# ---------------------------------------------------------------------
# recovery of family parameters from samples
# ---------------------------------------------------------------------

@dataclass(frozen=True)
class Recovery:
    params: FamilyParams
    classified_case: Tag
    max_function_discrepancy: float
    max_phi_discrepancy: float
    gamma_threshold: float
    lambda_from_ode: Optional[float]

    def to_json(self) -> dict:
        p = self.params
        return {
            "gamma": p.gamma, "A": p.A, "B": p.B, "C": p.C, "D": p.D,
            "lambda": p.lam, "mu": p.mu,
            "max_function_discrepancy": self.max_function_discrepancy,
            "max_phi_discrepancy": self.max_phi_discrepancy,
            "classified_case": self.classified_case.value,
        }


def second_derivative(values: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order central second difference at indices 2 .. n-3."""
    v = values
    return (-v[4:] + 16 * v[3:-1] - 30 * v[2:-2] + 16 * v[1:-3] - v[:-4]) / (12 * h * h)


def _basis(case: Tag, gamma: float, xs: np.ndarray) -> np.ndarray:
    one = np.ones_like(xs)
    if case is Tag.TRIG:
        w = math.sqrt(-gamma)
        return np.column_stack([-np.cos(w * xs), np.sin(w * xs), one])
    if case is Tag.HYPER:
        w = math.sqrt(gamma)
        return np.column_stack([np.cosh(w * xs), np.sinh(w * xs), one])
    return np.column_stack([xs * xs / 2, xs, one])


def recover_parameters(xs, f_samples, F_samples, phi_samples, gamma_rel_threshold: float = 1e-6) -> Recovery:
    """Estimate (gamma, A, B, C, D, lambda, mu) from equispaced samples of a smooth family.

    gamma comes from regressing f'' (finite differences) on (f, 1); the
    coefficients then come from linear least squares in the basis of the
    detected sign case.  Discrepancies compare the rebuilt functions with
    the samples, since the coefficients are not unique for gamma < 0.
    """
    x = np.asarray(xs, dtype=float)
    f = np.asarray(f_samples, dtype=float)
    F = np.asarray(F_samples, dtype=float)
    phi = np.asarray(phi_samples, dtype=float)
    n = x.size
    if n < 7 or not (f.shape == F.shape == phi.shape == x.shape):
        raise InsufficientSamples("need at least 7 samples of x, f, F, phi of equal length")
    if not all(np.all(np.isfinite(a)) for a in (x, f, F, phi)):
        raise InsufficientSamples("samples must be finite")
    steps = np.diff(x)
    h = float(steps.mean())
    if not h > 0 or np.max(np.abs(steps - h)) > 1e-6 * h:
        raise InsufficientSamples("sample points must be increasing and equispaced")

    d2 = second_derivative(f, h)
    core = f[2:-2]
    spread = float(np.max(np.abs(core - core.mean())))
    span = float(x[-1] - x[0])
    if spread <= 1e-12 * max(1.0, float(np.max(np.abs(f)))):
        gamma_est, c = 0.0, 0.0
        threshold = gamma_rel_threshold / span ** 2
    else:
        design = np.column_stack([core, np.ones_like(core)])
        (gamma_est, c), *_ = np.linalg.lstsq(design, d2, rcond=None)
        # gamma has units 1/x^2; compare against the curvature scale of the data
        threshold = gamma_rel_threshold * max(1.0 / span ** 2, float(np.max(np.abs(d2))) / spread)
        if abs(gamma_est) < threshold:
            gamma_est = 0.0
    gamma_est = float(gamma_est)
    case = sign_case(gamma_est)
    lam_ode = -float(c) / gamma_est if gamma_est != 0 else None

    basis = _basis(case, gamma_est, x)
    (A, B, lam), _ = _lstsq(basis, f)
    (C, D, mu), _ = _lstsq(basis, F)
    if abs(A * D - B * C) < DEGENERATE_DET:
        raise DegenerateFit(f"AD - BC = {A * D - B * C:.3g}; samples do not determine a family")
    params = FamilyParams(gamma_est, float(A), float(B), float(C), float(D), float(lam), float(mu))
    fns = family_functions(params)
    disc = max(float(np.max(np.abs(fns["f"](x) - f))), float(np.max(np.abs(fns["F"](x) - F))))
    with np.errstate(all="ignore"):
        phi_disc = float(np.max(np.abs(fns["phi"](x) - phi)))
    return Recovery(params, case, disc, phi_disc, float(threshold), lam_ode)
