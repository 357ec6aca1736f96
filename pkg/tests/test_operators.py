import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as sciint
from scipy import special as sp

from revineq import (DecayEnvelope, DegenerateInputError, ParameterError,
                     QuadratureSpec, RadialProfile, WeightSpec, euler_apply,
                     kernel_bound_report, lp_functional, make_profile,
                     radial_derivative, reverse_holder_gap, riesz_potential,
                     sphere_measure, stein_weiss_form)


@pytest.fixture(scope="module")
def expp():
    return make_profile("exp_decay", [1.0])


@pytest.fixture(scope="module")
def box_profile():
    return RadialProfile(
        value=lambda r: (np.asarray(r, float) <= 1.0).astype(float),
        envelope=DecayEnvelope("uniform", scale=1.0),
        family_tag="indicator", support_radius=1.0)


# ---------------------------------------------------------------------------
# L^p functionals
# ---------------------------------------------------------------------------

def test_lp_interval_measure(line, line_norm, mc_spec, box_profile):
    # constant 1 on [0,1] with p=1 on the line: total measure 2; the value
    # carries the Monte Carlo |S| with its stderr
    val = lp_functional(box_profile, 1.0, line, line_norm, mc_spec)
    S = sphere_measure(line, line_norm, mc_spec)
    assert abs(val - 2.0) <= 3 * S.stderr + 1e-9


def test_lp_exp_plane(plane, plane_norm, mc_spec, expp):
    val = lp_functional(expp, 1.0, plane, plane_norm, mc_spec)
    S = sphere_measure(plane, plane_norm, mc_spec).value
    # Gamma(2) = 1 up to the declared 1e-8 envelope tail mass
    assert val == pytest.approx(S, rel=1e-7)


def test_lp_half_exponent(h1, koranyi, mc_spec, expp):
    val = lp_functional(expp, 0.5, h1, koranyi, mc_spec)
    S = sphere_measure(h1, koranyi, mc_spec).value
    assert val == pytest.approx((96.0 * S) ** 2, rel=1e-7)


def test_lp_dilation_covariance(h1, koranyi, mc_spec, expp):
    """||f o D_s||_p = s^{-Q/p} ||f||_p; exact through the scaled envelope."""
    base = lp_functional(expp, 0.5, h1, koranyi, mc_spec)
    for s in (0.5, 2.0):
        val = lp_functional(expp.dilated(s), 0.5, h1, koranyi, mc_spec)
        assert val == pytest.approx(s ** (-4.0 / 0.5) * base, rel=1e-9)


def test_lp_negative_exponent_needs_window(plane, plane_norm, mc_spec, expp):
    with pytest.raises(ParameterError):
        lp_functional(expp, -1.0, plane, plane_norm, mc_spec)


def test_lp_negative_exponent_degenerate(plane, plane_norm, box_profile):
    spec = QuadratureSpec(sample_count=1000, seed=0, truncation_radius=3.0)
    with pytest.raises(DegenerateInputError):
        lp_functional(box_profile, -1.0, plane, plane_norm, spec)


def test_lp_zero_p_rejected(plane, plane_norm, mc_spec, expp):
    with pytest.raises(ParameterError):
        lp_functional(expp, 0.0, plane, plane_norm, mc_spec)


# ---------------------------------------------------------------------------
# derivative operators
# ---------------------------------------------------------------------------

def test_radial_derivative_exp(expp):
    d = radial_derivative(expp)
    r = np.array([0.2, 1.0, 4.0])
    assert np.allclose(d(r), -np.exp(-r))


def test_euler_operator(expp):
    e = euler_apply(expp)
    r = np.array([0.2, 1.0, 4.0])
    assert np.allclose(e(r), -r * np.exp(-r))


def test_identity_profile_derivative():
    ident = RadialProfile(value=lambda r: np.asarray(r, float),
                          envelope=DecayEnvelope("uniform", scale=10.0))
    d = radial_derivative(ident)
    assert np.allclose(d(np.array([0.5, 2.0])), 1.0, atol=1e-6)
    e = euler_apply(ident)
    assert np.allclose(e(np.array([0.5, 2.0])), [0.5, 2.0], atol=1e-6)


def test_power_profile_derivative():
    prof = make_profile("power_decay", [6.0, 1.0])
    r = np.array([0.3, 1.0, 2.5])
    assert np.allclose(prof.deriv(r), -6.0 * (1 + r) ** -7.0)


def test_finite_difference_fallback():
    prof = RadialProfile(value=lambda r: np.exp(-np.asarray(r, float)),
                         envelope=DecayEnvelope("exp"))
    r = np.array([0.5, 1.0, 10.0])
    assert np.allclose(prof.deriv(r), -np.exp(-r), rtol=1e-5)


# ---------------------------------------------------------------------------
# Riesz-type potential
# ---------------------------------------------------------------------------

def test_riesz_at_origin_indicator(plane, plane_norm, mc_spec, box_profile):
    res = riesz_potential(plane, plane_norm, box_profile, 2.0, [0.0, 0.0],
                          mc_spec)
    S = sphere_measure(plane, plane_norm, mc_spec).value
    assert res.value == pytest.approx(S / 4.0, rel=1e-8)


def test_riesz_zero_profile(plane, plane_norm, mc_spec):
    zero = RadialProfile(value=lambda r: np.zeros_like(np.asarray(r, float)),
                         envelope=DecayEnvelope("exp"))
    res = riesz_potential(plane, plane_norm, zero, 1.5, [0.3, 0.1], mc_spec)
    assert res.value == 0.0


def test_riesz_far_field_line(line, line_norm, box_profile):
    spec = QuadratureSpec(sample_count=100000, seed=3)
    res = riesz_potential(line, line_norm, box_profile, 1.0, [10.0], spec)
    assert 2 * (10 - 1) <= res.value <= 2 * (10 + 1)
    assert res.value == pytest.approx(20.0, rel=5e-3)


def test_riesz_rejects_nonpositive_lambda(plane, plane_norm, mc_spec, expp):
    with pytest.raises(ParameterError):
        riesz_potential(plane, plane_norm, expp, 0.0, [0.0, 0.0], mc_spec)


def test_riesz_divergence_when_growth_beats_decay(plane, plane_norm, mc_spec):
    from revineq import DivergenceError
    slow = make_profile("power_decay", [3.0, 1.0])
    with pytest.raises(DivergenceError):
        riesz_potential(plane, plane_norm, slow, 2.0, [0.0, 0.0], mc_spec)


def test_integrate_cartesian_divergence_flag(line, line_norm):
    from revineq import DecayEnvelope, integrate_cartesian
    spec = QuadratureSpec(sample_count=2000, seed=1)
    res = integrate_cartesian(line, lambda x: np.exp(np.abs(x[:, 0])) * 1e300,
                              spec, DecayEnvelope("exp", scale=0.5))
    assert res.divergent


# ---------------------------------------------------------------------------
# weighted bilinear form
# ---------------------------------------------------------------------------

def test_stein_weiss_zero(plane, plane_norm, mc_spec):
    zero = RadialProfile(value=lambda r: np.zeros_like(np.asarray(r, float)),
                         envelope=DecayEnvelope("exp"))
    res = stein_weiss_form(zero, zero, 0.0, 0.0, 1.0, plane, plane_norm,
                           mc_spec)
    assert res.value == 0.0


def test_stein_weiss_box_oracle(line, line_norm, box_profile):
    """alpha=beta=0, lam=1, f=h=1_{[0,1]} on R: brute-force 2-D quadrature."""
    oracle, _ = sciint.dblquad(lambda y, x: abs(x - y), -1, 1, -1, 1,
                               epsabs=1e-12)
    spec = QuadratureSpec(sample_count=200000, seed=21)
    res = stein_weiss_form(box_profile, box_profile, 0.0, 0.0, 1.0,
                           line, line_norm, spec)
    assert oracle == pytest.approx(8.0 / 3.0, rel=1e-7)
    assert abs(res.value - oracle) <= 4 * res.stderr


def test_stein_weiss_weighted_box_oracle(line, line_norm, box_profile):
    """alpha=0.5, beta=0.25, lam=1.5 against brute-force quadrature."""
    a, b, lam = 0.5, 0.25, 1.5
    oracle, _ = sciint.dblquad(
        lambda y, x: abs(x) ** a * abs(x - y) ** lam * abs(y) ** b,
        -1, 1, -1, 1, epsabs=1e-12)
    spec = QuadratureSpec(sample_count=300000, seed=22)
    res = stein_weiss_form(box_profile, box_profile, a, b, lam,
                           line, line_norm, spec)
    assert abs(res.value - oracle) <= 4 * res.stderr


def test_stein_weiss_dilation_scaling(h1, koranyi, expp):
    """B(f o D_s, h o D_s) = s^{-(2Q + a + b + lam)} B(f, h)."""
    spec = QuadratureSpec(sample_count=50000, seed=8)
    a, b, lam, s = 1.0, 2.0, 5.0, 2.0
    base = stein_weiss_form(expp, expp, a, b, lam, h1, koranyi, spec)
    scaled = stein_weiss_form(expp.dilated(s), expp.dilated(s), a, b, lam,
                              h1, koranyi, spec)
    factor = s ** -(2 * 4.0 + a + b + lam)
    assert scaled.value == pytest.approx(factor * base.value, rel=1e-9)


def test_stein_weiss_deterministic(plane, plane_norm, expp):
    spec = QuadratureSpec(sample_count=10000, seed=4)
    r1 = stein_weiss_form(expp, expp, 0.0, 0.0, 2.0, plane, plane_norm, spec)
    r2 = stein_weiss_form(expp, expp, 0.0, 0.0, 2.0, plane, plane_norm, spec)
    assert r1.value == r2.value


# ---------------------------------------------------------------------------
# reverse Hoelder gap
# ---------------------------------------------------------------------------

def test_gap_discrete_random(rng):
    for _ in range(200):
        n = rng.integers(2, 60)
        f = rng.random(n) + 1e-6
        g = rng.random(n) + 1e-6
        p = rng.uniform(0.05, 0.95)
        gap = reverse_holder_gap(f, g, p)
        rhs = np.sum(f ** p) ** (1 / p) * np.sum(g ** (p / (p - 1))) ** ((p - 1) / p)
        assert gap >= -1e-8 * rhs


def test_gap_zero_f():
    gap = reverse_holder_gap(np.zeros(5), np.ones(5), 0.5)
    assert gap == 0.0


def test_gap_equality_case():
    # g proportional to f^{p-1} achieves equality
    rng = np.random.default_rng(3)
    f = rng.random(40) + 0.1
    p = 0.4
    g = 2.5 * f ** (p - 1.0)
    lhs = np.sum(f * g)
    gap = reverse_holder_gap(f, g, p)
    assert abs(gap) <= 1e-10 * lhs


def test_gap_degenerate_g():
    with pytest.raises(DegenerateInputError):
        reverse_holder_gap(np.ones(4), np.array([1.0, 0.0, 1.0, 1.0]), 0.5)


def test_gap_profiles(plane, plane_norm, expp):
    spec = QuadratureSpec(sample_count=10000, seed=5, truncation_radius=25.0)
    gap = reverse_holder_gap(expp, expp, 0.5, plane, plane_norm, spec)
    assert gap >= 0.0
    # equality profile: g = f^{p-1} = e^{+r/2}
    geq = RadialProfile(value=lambda r: np.exp(0.5 * np.asarray(r, float)),
                        envelope=DecayEnvelope("exp"), strictly_positive=True)
    gap_eq = reverse_holder_gap(expp, geq, 0.5, plane, plane_norm, spec)
    lhs = sphere_measure(plane, plane_norm, spec).value
    assert abs(gap_eq) <= 1e-8 * lhs


@given(p=st.floats(min_value=0.05, max_value=0.95),
       data=st.lists(st.tuples(st.floats(min_value=1e-3, max_value=1e3),
                               st.floats(min_value=1e-3, max_value=1e3)),
                     min_size=1, max_size=30))
@settings(max_examples=300, deadline=None)
def test_gap_nonnegative_property(p, data):
    f = np.array([d[0] for d in data])
    g = np.array([d[1] for d in data])
    gap = reverse_holder_gap(f, g, p)
    rhs = np.sum(f ** p) ** (1 / p) * np.sum(g ** (p / (p - 1))) ** ((p - 1) / p)
    assert gap >= -1e-9 * max(rhs, 1.0)


# ---------------------------------------------------------------------------
# kernel bounds
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("fixture", ["plane_norm", "cygan"])
def test_kernel_bounds_clean(request, fixture):
    norm = request.getfixturevalue(fixture)
    rep = kernel_bound_report(norm.group, norm, 10000, seed=3)
    assert rep.clean


def test_kernel_bounds_require_true_norm(h1, koranyi):
    with pytest.raises(ParameterError):
        kernel_bound_report(h1, koranyi)


def test_weight_spec_validation():
    with pytest.raises(ParameterError):
        WeightSpec(float("inf"))
    with pytest.raises(ParameterError):
        WeightSpec(1.0, role="middle")
