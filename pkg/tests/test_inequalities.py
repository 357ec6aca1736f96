import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as sciint
from scipy import special as sp

from revineq import (DegenerateInputError, InequalityParams, ParameterError,
                     PreconditionError, QuadratureSpec, WeightSpec,
                     abelian_group, analytic_A1, analytic_A2, balanced_lambda,
                     bracket_kappa, conjugate_exponent, constant_bracket,
                     euclidean_norm, make_profile, stein_weiss_lower_constant,
                     validate_params, verify_forward_ckn, verify_forward_hardy,
                     verify_forward_sobolev, verify_reverse_ckn,
                     verify_reverse_hardy, verify_reverse_hls,
                     verify_reverse_integral_hardy, verify_reverse_sobolev,
                     verify_stein_weiss)

WORKED = InequalityParams(Q=4, p=0.5, q_prime=0.5, lam=5.0, alpha=1.0, beta=2.0)


# ---------------------------------------------------------------------------
# conjugate exponents and admissibility
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("p,expected", [(0.5, -1.0), (2.0, 2.0), (2 / 3, -2.0)])
def test_conjugate_values(p, expected):
    assert conjugate_exponent(p) == pytest.approx(expected, rel=1e-14)


def test_conjugate_rejects_one():
    with pytest.raises(ParameterError):
        conjugate_exponent(1.0)


@given(p=st.floats(min_value=-50, max_value=50).filter(
    lambda v: abs(v - 1.0) > 1e-3))
@settings(max_examples=300, deadline=None)
def test_conjugate_involution(p):
    assert conjugate_exponent(conjugate_exponent(p)) == pytest.approx(
        p, rel=1e-12, abs=1e-15)


def test_worked_admissibility():
    rep = validate_params(WORKED)
    assert rep.admissible
    assert rep.failures == []
    # derived facts: p' = q = -1, balance 2 + 2 = 8/4 + 2
    assert WORKED.p_prime == -1.0 and WORKED.q == -1.0
    assert abs(WORKED.balance_residual) == 0.0


def test_negative_alpha_fails():
    bad = InequalityParams(Q=4, p=0.5, q_prime=0.5, lam=5.1, alpha=-0.1, beta=2.0)
    rep = validate_params(bad)
    assert "0 <= alpha" in rep.failures


def test_balance_violation_fails():
    bad = InequalityParams(Q=4, p=0.5, q_prime=0.5, lam=4.0, alpha=1.0, beta=2.0)
    rep = validate_params(bad)
    assert any(c.startswith("balance") for c in rep.failures)


def test_improved_variants_relax_one_side():
    # beta above its bound: full fails, improved_a passes (alpha side only)
    p = InequalityParams(Q=4, p=0.5, q_prime=0.5, lam=2.0, alpha=1.0, beta=5.0,
                         variant="improved_a")
    rep = validate_params(p)
    assert rep.admissible
    assert "beta < -Q/p'" in rep.unverified
    full = validate_params(InequalityParams(Q=4, p=0.5, q_prime=0.5, lam=2.0,
                                            alpha=1.0, beta=5.0))
    assert not full.admissible


def test_balanced_lambda_closes_balance():
    lam = balanced_lambda(4.0, 0.3, 0.7, 0.5, 0.25)
    P = InequalityParams(Q=4, p=0.3, q_prime=0.7, lam=lam, alpha=0.5, beta=0.25)
    assert abs(P.balance_residual) < 1e-13


# ---------------------------------------------------------------------------
# analytic constants
# ---------------------------------------------------------------------------

def test_analytic_constants_worked_example():
    S = 2.7
    assert analytic_A1(WORKED, S) == pytest.approx(4.0 / S ** 2, rel=1e-14)
    assert analytic_A2(WORKED, S) == pytest.approx(9.0 / S ** 2, rel=1e-14)
    assert bracket_kappa(-1.0, -1.0) == pytest.approx(0.25, rel=1e-14)
    assert stein_weiss_lower_constant(WORKED, S) == pytest.approx(
        13.0 / (256.0 * S ** 2), rel=1e-13)


def test_constant_bracket():
    br = constant_bracket(1.0, -1.0, -1.0)
    assert br.lower == pytest.approx(0.25)
    assert br.upper == 1.0


def test_bracket_kappa_in_unit_interval():
    for pp in np.linspace(-8.0, -0.1, 17):
        for q in np.linspace(-8.0, -0.1, 17):
            k = bracket_kappa(pp, q)
            assert 0.0 < k <= 1.0


def test_bracket_rejects_positive_exponents():
    with pytest.raises(ParameterError):
        bracket_kappa(2.0, -1.0)
    with pytest.raises(ParameterError):
        constant_bracket(-1.0, -1.0, -1.0)


def test_analytic_A_requires_conditions():
    bad_beta = InequalityParams(Q=4, p=0.5, q_prime=0.5, lam=2.0, alpha=1.0,
                                beta=5.0, variant="improved_a")
    with pytest.raises(ParameterError):
        analytic_A1(bad_beta, 1.0)
    analytic_A2(bad_beta, 1.0)   # alpha side is fine


def test_constants_positive_on_grid():
    """A1, A2 and the certified constant are positive across the admissible
    grid (lambda solved from the balance condition)."""
    for Q in (1.0, 2.0, 4.0):
        for p, qp in itertools.product((0.3, 0.5, 0.7), repeat=2):
            q, pp = conjugate_exponent(qp), conjugate_exponent(p)
            for fa, fb in itertools.product((0.0, 0.5), repeat=2):
                alpha, beta = fa * (-Q / q), fb * (-Q / pp)
                lam = balanced_lambda(Q, p, qp, alpha, beta)
                P = InequalityParams(Q=Q, p=p, q_prime=qp, lam=lam,
                                     alpha=alpha, beta=beta)
                assert validate_params(P).admissible
                assert analytic_A1(P, 2.0) > 0
                assert analytic_A2(P, 2.0) > 0
                assert stein_weiss_lower_constant(P, 2.0) > 0


# ---------------------------------------------------------------------------
# reverse Hardy / Sobolev / CKN against Gamma oracles
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def expp():
    return make_profile("exp_decay", [1.0])


def test_reverse_hardy_gamma_oracle(h1, koranyi, mc_spec, expp):
    rep = verify_reverse_hardy(expp, 0.5, h1, koranyi, mc_spec)
    oracle = 0.5 * (sp.gamma(3.5) / sp.gamma(4.0)) ** 2
    assert rep.ratio == pytest.approx(oracle, rel=1e-3)
    assert rep.analytic_constant == pytest.approx(1.0 / 7.0)
    assert rep.passed


def test_reverse_sobolev_gamma_oracle(h1, koranyi, mc_spec, expp):
    rep = verify_reverse_sobolev(expp, 0.5, h1, koranyi, mc_spec)
    oracle = (sp.gamma(4.0) * math.sqrt(0.5) / sp.gamma(4.5)) ** 2
    assert rep.ratio == pytest.approx(oracle, rel=1e-3)
    assert rep.analytic_constant == pytest.approx(0.125)
    assert rep.passed


def test_reverse_ckn_gamma_oracle(h1, koranyi, mc_spec, expp):
    rep = verify_reverse_ckn(expp, 0.5, 1.0, 1.0, h1, koranyi, mc_spec)
    oracle = 12.0 / sp.gamma(3.5) ** 2
    assert rep.ratio == pytest.approx(oracle, rel=1e-9)
    assert rep.analytic_constant == pytest.approx(0.5)
    assert rep.passed


def test_reverse_hardy_scale_invariant(h1, koranyi, mc_spec, expp):
    base = verify_reverse_hardy(expp, 0.5, h1, koranyi, mc_spec)
    for c in (0.3, 4.0):
        rep = verify_reverse_hardy(make_profile("exp_decay", [c]), 0.5,
                                   h1, koranyi, mc_spec)
        assert rep.ratio == pytest.approx(base.ratio, rel=1e-9)


def test_reverse_hardy_requires_decreasing(h1, koranyi, mc_spec):
    from revineq import DecayEnvelope, RadialProfile
    humped = RadialProfile(
        value=lambda r: np.asarray(r, float) * np.exp(-np.asarray(r, float)),
        derivative=lambda r: (1 - np.asarray(r, float))
        * np.exp(-np.asarray(r, float)),
        envelope=DecayEnvelope("exp", boost=1.0),
        monotone_decreasing=True)   # mis-tagged on purpose
    with pytest.raises((PreconditionError, ParameterError)):
        verify_reverse_hardy(humped, 0.5, h1, koranyi, mc_spec)


def test_reverse_hardy_rejects_p_out_of_range(h1, koranyi, mc_spec, expp):
    with pytest.raises(ParameterError):
        verify_reverse_hardy(expp, 1.5, h1, koranyi, mc_spec)


def test_ckn_reduces_to_hardy_and_sobolev(h1, koranyi, mc_spec, expp):
    """gamma = p with alpha = 0 reproduces the Hardy report; gamma = 0 with
    beta = 0 reproduces the Sobolev report."""
    p = 0.5
    hardy = verify_reverse_hardy(expp, p, h1, koranyi, mc_spec)
    ckn_h = verify_reverse_ckn(expp, p, 0.0, p - 1.0, h1, koranyi, mc_spec)
    assert ckn_h.ratio == pytest.approx(hardy.ratio, rel=1e-10)
    assert ckn_h.analytic_constant == pytest.approx(hardy.analytic_constant)

    sob = verify_reverse_sobolev(expp, p, h1, koranyi, mc_spec)
    ckn_s = verify_reverse_ckn(expp, p, -1.0, 0.0, h1, koranyi, mc_spec)
    assert ckn_s.ratio == pytest.approx(sob.ratio, rel=1e-10)
    assert ckn_s.analytic_constant == pytest.approx(sob.analytic_constant)


def test_ckn_rejects_gamma_above_Q(h1, koranyi, mc_spec, expp):
    with pytest.raises(ParameterError):
        verify_reverse_ckn(expp, 0.5, 2.0, 2.0, h1, koranyi, mc_spec)


# ---------------------------------------------------------------------------
# weighted bilinear verification
# ---------------------------------------------------------------------------

def test_stein_weiss_worked_example(h1, koranyi, expp):
    spec = QuadratureSpec(sample_count=30000, seed=2)
    rep = verify_stein_weiss(expp, expp, WORKED, h1, koranyi, spec)
    assert rep.passed
    assert rep.ratio > rep.analytic_constant
    assert rep.sphere_value == pytest.approx(2 * math.pi ** 2, rel=0.02)


def test_stein_weiss_ratio_scale_free_in_amplitude(h1, koranyi, expp):
    from dataclasses import replace
    spec = QuadratureSpec(sample_count=20000, seed=2)
    scaled = replace(
        expp,
        value=lambda r: 3.0 * np.exp(-np.asarray(r, float)),
        derivative=lambda r: -3.0 * np.exp(-np.asarray(r, float)))
    a = verify_stein_weiss(expp, expp, WORKED, h1, koranyi, spec)
    b = verify_stein_weiss(scaled, expp, WORKED, h1, koranyi, spec)
    assert a.ratio == pytest.approx(b.ratio, rel=1e-12)


def test_stein_weiss_dilation_drift(h1, koranyi, expp):
    spec = QuadratureSpec(sample_count=20000, seed=6)
    gauss = make_profile("gaussian", [1.0])
    base = verify_stein_weiss(expp, gauss, WORKED, h1, koranyi, spec)
    for s in (0.5, 2.0, 4.0):
        rep = verify_stein_weiss(expp.dilated(s), gauss.dilated(s), WORKED,
                                 h1, koranyi, spec)
        assert abs(rep.ratio - base.ratio) / base.ratio <= 1e-2


def test_stein_weiss_rejects_inadmissible(h1, koranyi, mc_spec, expp):
    bad = InequalityParams(Q=4, p=0.5, q_prime=0.5, lam=4.0, alpha=1.0, beta=2.0)
    with pytest.raises(ParameterError):
        verify_stein_weiss(expp, expp, bad, h1, koranyi, mc_spec)


def test_hls_is_stein_weiss_without_weights(plane, plane_norm, expp):
    spec = QuadratureSpec(sample_count=30000, seed=4)
    lam = balanced_lambda(2.0, 0.5, 0.5)
    P = InequalityParams(Q=2, p=0.5, q_prime=0.5, lam=lam)
    hls = verify_reverse_hls(expp, expp, P, plane, plane_norm, spec)
    sw = verify_stein_weiss(expp, expp, P, plane, plane_norm, spec)
    assert hls.ratio == sw.ratio
    assert hls.inequality == "reverse_hls"
    assert hls.passed


def test_hls_rejects_weights(plane, plane_norm, mc_spec, expp):
    with pytest.raises(ParameterError):
        verify_reverse_hls(expp, expp, WORKED, plane, plane_norm, mc_spec)


def test_hls_zero_profile_degenerate(plane, plane_norm, mc_spec, expp):
    from revineq import DecayEnvelope, RadialProfile
    zero = RadialProfile(value=lambda r: np.zeros_like(np.asarray(r, float)),
                         envelope=DecayEnvelope("exp"))
    P = InequalityParams(Q=2, p=0.5, q_prime=0.5,
                         lam=balanced_lambda(2.0, 0.5, 0.5))
    with pytest.raises(DegenerateInputError):
        verify_reverse_hls(expp, zero, P, plane, plane_norm, mc_spec)


def test_certified_constant_violated_at_admissible_point():
    """Documented counterexample: the certified two-regime constant exceeds
    the true bilinear ratio at an admissible parameter point.

    Q=1, p=0.7, q'=0.3, alpha=0, beta = (1/2)(-Q/p'), lambda from balance,
    f = e^{-r}, h = (1+r)^{-8.881}: high-accuracy quadrature of the double
    integral gives ratio/constant ~ 0.981 < 1.  The inner/outer-regime
    splitting behind the constant relies on intermediate integrals that are
    divergent for such data, so the half-sum bound it produces is not
    actually certified; this pins the numerical fact.
    """
    Q, p, qp = 1.0, 0.7, 0.3
    pp = conjugate_exponent(p)
    beta = 0.5 * (-Q / pp)
    lam = balanced_lambda(Q, p, qp, 0.0, beta)
    P = InequalityParams(Q=Q, p=p, q_prime=qp, lam=lam, alpha=0.0, beta=beta)
    assert validate_params(P).admissible

    s = max(Q / qp, Q / p) + lam + Q + 2.0

    def integrand(y, x):
        return abs(x - y) ** lam * math.exp(-abs(x)) \
            * (1.0 + abs(y)) ** (-s) * abs(y) ** beta

    B = 0.0
    import warnings
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", sciint.IntegrationWarning)
        for (x0, x1) in ((-50.0, 0.0), (0.0, 50.0)):
            v, e = sciint.dblquad(integrand, x0, x1, -50.0, 50.0, epsabs=1e-10)
            B += v
    nf = (2.0 / qp) ** (1.0 / qp)
    nh = (2.0 / (p * s - 1.0)) ** (1.0 / p)
    ratio = B / (nf * nh)
    L = stein_weiss_lower_constant(P, 2.0)

    assert ratio == pytest.approx(0.0077734, rel=1e-3)
    assert ratio < L                       # the claimed bound fails here
    assert ratio / L > 0.97                # ... by about two percent


# ---------------------------------------------------------------------------
# reverse integral Hardy pair
# ---------------------------------------------------------------------------

def test_integral_hardy_certified_side_worked_example(h1, koranyi, expp):
    """Ball variant with the worked weights: kappa*A*(int f^p U)^{1/p} = 256
    independently of |S|; the outer integral is structurally divergent and
    the report says so instead of passing."""
    spec = QuadratureSpec(sample_count=30000, seed=2)
    rep = verify_reverse_integral_hardy(
        "ball", WeightSpec(-6.0, "W_outer"), WeightSpec(-1.0, "U_inner"),
        expp, 0.5, -1.0, h1, koranyi, spec)
    assert rep.analytic_constant * rep.rhs == pytest.approx(256.0, rel=1e-6)
    assert rep.extras["kappa"] == pytest.approx(0.25)
    assert rep.degenerate is not None and "origin" in rep.degenerate
    assert rep.lhs == 0.0
    assert not rep.passed


def test_integral_hardy_complement_constant(h1, koranyi, expp):
    spec = QuadratureSpec(sample_count=30000, seed=2)
    rep = verify_reverse_integral_hardy(
        "complement", WeightSpec(-1.0, "W_outer"), WeightSpec(-3.5, "U_inner"),
        expp, 0.5, -1.0, h1, koranyi, spec)
    S = rep.sphere_value
    assert rep.extras["A"] == pytest.approx(9.0 / S ** 2, rel=1e-12)
    assert rep.degenerate is not None
    assert not rep.passed


def test_integral_hardy_scaling_in_f(h1, koranyi, expp):
    """Both sides are homogeneous of degree one in f: scaling the profile
    leaves the certified right side's ratio structure unchanged."""
    from dataclasses import replace
    spec = QuadratureSpec(sample_count=20000, seed=2)
    rep1 = verify_reverse_integral_hardy(
        "ball", WeightSpec(-6.0), WeightSpec(-1.0, "U_inner"),
        expp, 0.5, -1.0, h1, koranyi, spec)
    scaled = replace(expp, value=lambda r: 3.0 * np.exp(-np.asarray(r, float)))
    rep3 = verify_reverse_integral_hardy(
        "ball", WeightSpec(-6.0), WeightSpec(-1.0, "U_inner"),
        scaled, 0.5, -1.0, h1, koranyi, spec)
    assert rep3.rhs == pytest.approx(3.0 * rep1.rhs, rel=1e-10)


def test_integral_hardy_parameter_errors(h1, koranyi, expp, mc_spec):
    with pytest.raises(ParameterError):
        verify_reverse_integral_hardy("ball", WeightSpec(-6.0),
                                      WeightSpec(-1.0, "U_inner"), expp,
                                      0.5, 1.0, h1, koranyi, mc_spec)
    with pytest.raises(ParameterError):
        verify_reverse_integral_hardy("ball", WeightSpec(2.0),
                                      WeightSpec(-1.0, "U_inner"), expp,
                                      0.5, -1.0, h1, koranyi, mc_spec)
    # unbalanced exponents: the scale power does not vanish
    with pytest.raises(ParameterError):
        verify_reverse_integral_hardy("ball", WeightSpec(-6.0),
                                      WeightSpec(-0.5, "U_inner"), expp,
                                      0.5, -1.0, h1, koranyi, mc_spec)
    bump = make_profile("smooth_bump", [1.0])
    with pytest.raises(DegenerateInputError):
        verify_reverse_integral_hardy("ball", WeightSpec(-6.0),
                                      WeightSpec(-1.0, "U_inner"), bump,
                                      0.5, -1.0, h1, koranyi, mc_spec)


# ---------------------------------------------------------------------------
# forward cross-checks
# ---------------------------------------------------------------------------

def test_forward_hardy_bump(h1, koranyi, mc_spec):
    bump = make_profile("smooth_bump", [2.0])
    rep = verify_forward_hardy(bump, 2.0, h1, koranyi, mc_spec)
    assert rep.direction == "upper"
    assert rep.ratio <= rep.analytic_constant
    assert rep.passed


def test_forward_sobolev_bump(h1, koranyi, mc_spec):
    bump = make_profile("smooth_bump", [2.0])
    rep = verify_forward_sobolev(bump, 2.0, h1, koranyi, mc_spec)
    assert rep.passed


def test_forward_ckn_reduces_to_hardy(h1, koranyi, mc_spec):
    bump = make_profile("smooth_bump", [2.0])
    ckn = verify_forward_ckn(bump, 2.0, 0.0, 1.0, h1, koranyi, mc_spec)
    hardy = verify_forward_hardy(bump, 2.0, h1, koranyi, mc_spec)
    assert ckn.ratio == pytest.approx(hardy.ratio, rel=1e-10)


def test_forward_hardy_sharpness_probe(h1, koranyi, mc_spec):
    """Along (1+r)^{-s} the ratio climbs to the sharp constant as s drops
    to (Q-p)/p; Beta-function oracle for Q=4, p=2."""
    for s in (1.5, 1.1):
        f = make_profile("power_decay", [s, 1.0])
        rep = verify_forward_hardy(f, 2.0, h1, koranyi, mc_spec)
        oracle = math.sqrt((4 * s * s + 2 * s) / (6 * s * s))
        assert rep.ratio == pytest.approx(oracle, rel=1e-4)
        assert rep.passed
    assert rep.ratio >= 0.9 * rep.analytic_constant


def test_forward_range_errors(h1, koranyi, mc_spec):
    bump = make_profile("smooth_bump", [2.0])
    with pytest.raises(ParameterError):
        verify_forward_hardy(bump, 5.0, h1, koranyi, mc_spec)   # p >= Q
    with pytest.raises(ParameterError):
        verify_forward_sobolev(bump, 0.5, h1, koranyi, mc_spec)
    with pytest.raises(ParameterError):
        verify_forward_ckn(bump, 0.5, 0.0, 1.0, h1, koranyi, mc_spec)


# ---------------------------------------------------------------------------
# report mechanics
# ---------------------------------------------------------------------------

def test_report_pass_recomputed(h1, koranyi, mc_spec, expp):
    rep = verify_reverse_hardy(expp, 0.5, h1, koranyi, mc_spec)
    assert rep.passed
    rep.analytic_constant = rep.ratio + 1.0   # force a failing margin
    assert not rep.passed
    d = rep.as_dict()
    assert d["pass"] is False and d["margin"] < 0
