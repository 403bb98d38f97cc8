import math

import numpy as np
import pytest

from cauchymeans import (FamilyParams, Interval, M1Params, PiecewiseParams, Tag, build_constant, build_family,
                         build_m1, build_piecewise, ode_classify, residual_minus, residual_plus)
from cauchymeans.errors import (InvalidParams, MissingDerivatives, NotSubinterval, PoleInDomain,
                                ZeroInDomain)
from cauchymeans.families import FunctionTriple

import oracles
from fixtures import family_fixtures, m1_fixtures

XS = np.linspace(0.6, 2.9, 9)


def test_poly_example():
    t = build_family(FamilyParams(0, 0, 1, 1, 0), Interval.open(-5, 5))
    assert t.tag is Tag.POLY
    for x in (-4.0, 0.5, 3.0):
        assert t.f(x) == x and t.phi(x) == x and t.F(x) == x * x / 2


def test_hyper_example():
    t = build_family(FamilyParams(1, 1, 0, 0, 1), Interval.open(0.5, 3))
    np.testing.assert_allclose(t.f(XS), np.cosh(XS), rtol=1e-15)
    np.testing.assert_allclose(t.F(XS), np.sinh(XS), rtol=1e-15)
    np.testing.assert_allclose(t.phi(XS), 1 / np.tanh(XS), rtol=1e-14)


def test_trig_example():
    t = build_family(FamilyParams(-1, 0, 1, 1, 0), Interval.open(0.2, 1.4))
    xs = np.linspace(0.3, 1.3, 7)
    np.testing.assert_allclose(t.f(xs), np.sin(xs), atol=1e-15)
    np.testing.assert_allclose(t.F(xs), -np.cos(xs), atol=1e-15)
    np.testing.assert_allclose(t.phi(xs), np.tan(xs), rtol=1e-14)


def test_pole_detected():
    # tan has a pole at pi/2
    with pytest.raises(PoleInDomain):
        build_family(FamilyParams(-1, 0, 1, 1, 0), Interval.open(0.2, 1.6))
    # pole at the closed end still counts
    with pytest.raises(PoleInDomain):
        build_family(FamilyParams(0, 1, 0, 0, 1), Interval.open(0, 1))


def test_degenerate_params():
    with pytest.raises(InvalidParams):
        FamilyParams(1, 1, 2, 2, 4)
    with pytest.raises(InvalidParams):
        M1Params(0, 1, 1, 1, 1)


@pytest.mark.parametrize("gamma,params,dom", [(g, p, d) for g, p, d in family_fixtures(per_gamma=3)])
def test_family_matches_brute_force(gamma, params, dom):
    t = build_family(params, dom)
    phi, f, F = oracles.brute_force_family(gamma, params.A, params.B, params.C, params.D, params.lam, params.mu)
    for x in np.linspace(dom.lower, dom.upper, 11)[1:-1]:
        assert t.f(x) == pytest.approx(f(x), rel=1e-13, abs=1e-13)
        assert t.F(x) == pytest.approx(F(x), rel=1e-13, abs=1e-13)
        assert t.phi(x) == pytest.approx(phi(x), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("gamma,params,dom", [(g, p, d) for g, p, d in family_fixtures(per_gamma=3)])
def test_family_pointwise_identity(gamma, params, dom):
    t = build_family(params, dom)
    xs = np.linspace(dom.lower, dom.upper, 13)[1:-1]
    for x in xs:
        for y in xs:
            scale = max(1.0, abs(t.F(x) - t.F(y)))
            assert abs(residual_minus(t, x, y)) <= 1e-10 * scale


@pytest.mark.parametrize("gamma,params,dom", [(g, p, d) for g, p, d in family_fixtures(per_gamma=2)])
def test_derivatives_match_finite_differences(gamma, params, dom):
    t = build_family(params, dom)
    x = (dom.lower + dom.upper) / 2
    h = 1e-5
    assert t.f1(x) == pytest.approx((t.f(x + h) - t.f(x - h)) / (2 * h), rel=1e-7, abs=1e-7)
    assert t.F1(x) == pytest.approx((t.F(x + h) - t.F(x - h)) / (2 * h), rel=1e-7, abs=1e-7)
    assert t.f2(x) == pytest.approx((t.f1(x + h) - t.f1(x - h)) / (2 * h), rel=1e-7, abs=1e-7)


def test_m1_examples():
    t = build_m1(M1Params(0, 1, 1, 0, 1), Interval.open(0, 5))
    assert t.f(2.0) == 3 and t.F(2.0) == 1 and t.phi(2.0) == pytest.approx(1 / 3)
    assert residual_plus(t, 1.0, 2.0) == pytest.approx(0, abs=1e-15)
    t = build_m1(M1Params(1, 0, 1, 1, 0), Interval.open(-1, 1))
    np.testing.assert_allclose(t.phi(XS / 3), np.tanh(XS / 3), rtol=1e-14)
    t = build_m1(M1Params(-1, 0, 1, 1, 0), Interval.open(-1, 1))
    np.testing.assert_allclose(t.phi(XS / 3), np.tan(XS / 3), rtol=1e-14)


def test_m1_zero_detected():
    with pytest.raises(ZeroInDomain):
        build_m1(M1Params(0, 1, 0, 0, 1), Interval.open(-1, 1))


@pytest.mark.parametrize("gamma,p,dom", m1_fixtures(per_gamma=2))
def test_m1_F_is_phi_f(gamma, p, dom):
    t = build_m1(p, dom)
    xs = np.linspace(dom.lower, dom.upper, 9)[1:-1]
    np.testing.assert_allclose(t.F(xs), t.phi(xs) * t.f(xs), rtol=1e-13, atol=1e-14)


@pytest.mark.parametrize("gamma", [-1.0, -0.5, 2.0])
def test_scaling_bridge(gamma):
    # m1 with coefficients scaled by sqrt|gamma| has f equal to the family's f'
    A, B, C, D = 0.7, 1.3, -0.4, 0.9
    s = math.sqrt(abs(gamma))
    dom = Interval.open(0.1, 0.6)
    fam = build_family(FamilyParams(gamma, A, B, C, D), dom)
    m1 = build_m1(M1Params(gamma, A * s, B * s, C * s, D * s), dom)
    xs = np.linspace(0.15, 0.55, 9)
    np.testing.assert_allclose(m1.f(xs), fam.f1(xs), rtol=1e-13)
    np.testing.assert_allclose(m1.F(xs), fam.F1(xs), rtol=1e-13)
    np.testing.assert_allclose(m1.phi(xs), fam.phi(xs), rtol=1e-12)


def test_piecewise_example():
    pw = PiecewiseParams(Interval.open(0, 10), Interval.closed(4, 6), 1, 2, 3, 0, lambda x: x * x, math.sin)
    t = build_piecewise(pw)
    assert t.phi(5) == 3 and t.f(1) == 1 and t.f(9) == 2 and t.F(1) == 3 and t.F(9) == 6
    assert residual_minus(t, 1, 9) == 0
    assert t.phi(9.5) == math.sin(9.5)


def test_piecewise_k_equals_i():
    I = Interval.open(0, 2)
    t = build_piecewise(PiecewiseParams(I, I, 0, 0, 2.5, 1, math.exp))
    xs = np.linspace(0.1, 1.9, 7)
    np.testing.assert_allclose(t.f(xs), np.exp(xs))
    assert np.all(t.phi(xs) == 2.5)


def test_piecewise_constant_degenerates():
    I = Interval.open(0, 4)
    t = build_piecewise(PiecewiseParams(I, Interval.closed(1, 2), 5, 5, 1, 0, lambda x: 5, math.cos))
    for x in (0.5, 1.5, 3.5):
        for y in (0.2, 2.2, 3.9):
            assert residual_minus(t, x, y) == 0


def test_piecewise_rejects_bad_k():
    I = Interval.open(0, 4)
    with pytest.raises(NotSubinterval):
        build_piecewise(PiecewiseParams(I, Interval.closed(3, 5), 0, 1, 1, 0, abs))
    with pytest.raises(InvalidParams):
        build_piecewise(PiecewiseParams(I, Interval.open(1, 2), 0, 1, 1, 0, abs))


def test_constant_family():
    t = build_constant(0, 7, np.exp, Interval.open(-1, 1))
    assert residual_minus(t, -0.5, 0.75) == 0
    t = build_constant(3, 3, lambda x: 1 / x, Interval.open(1, 2))
    assert residual_minus(t, 1.2, 1.9) == 0


def test_ode_classify_cases():
    grid = np.linspace(0.6, 2.9, 50)
    poly = build_family(FamilyParams(0, 1.5, -0.2, 0.3, 1), Interval.open(0.5, 3))
    r = ode_classify(poly, grid)
    assert r.gamma_est == 0 and r.max_defect <= 1e-12
    hyp = build_family(FamilyParams(1, 1, 0, 0, 1, 0.4), Interval.open(0.5, 3))
    r = ode_classify(hyp, grid)
    assert abs(r.gamma_est - 1) <= 1e-10 and r.lam_est == pytest.approx(0.4, abs=1e-9)
    trig = build_family(FamilyParams(-4, 1, 0.5, 0, 1), Interval.open(0.1, 0.5))
    r = ode_classify(trig, np.linspace(0.15, 0.45, 30))
    assert abs(r.gamma_est + 4) <= 1e-10


def test_ode_classify_needs_derivatives():
    t = FunctionTriple(Interval.open(0, 1), abs, abs, abs)
    with pytest.raises(MissingDerivatives):
        ode_classify(t, [0.2, 0.5, 0.7])
