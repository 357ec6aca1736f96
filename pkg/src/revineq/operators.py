"""Integral operators and functionals entering the reverse inequalities.

All trial data is radial: a profile F of the gauge radius r = |x| represents
the function x -> F(|x|) on the group.  The L^p functional for any p != 0 is

    ||f||_p = ( |S| int_0^inf F(r)^p r^{Q-1} dr )^{1/p},

which for p in (0, 1) is the formal quasi-norm entering the reverse Hoelder
inequality, and for p < 0 requires a strictly positive profile on a bounded
integration window (the convention 0^q = +inf for q < 0 is enforced by
raising DegenerateInputError rather than letting infinities into results).

The growing-kernel potential and the doubly weighted bilinear form

    I_лu(x) = int |y^{-1}x|^л u(y) dy,
    B(f, h) = int int |x|^a |y^{-1}x|^л f(|x|) h(|y|) |y|^b dx dy,   л > 0,

are estimated by importance-sampled Monte Carlo with the exact polar
Jacobian from the quadrature module; estimates are deterministic per seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .exceptions import (DegenerateInputError, DivergenceError,
                         EvaluationError, ParameterError)
from .groups import (HomogeneousGroup, QuasiNorm, dilate, group_inv,
                     group_mul)
from .quadrature import (DecayEnvelope, IntegralResult, QuadratureSpec,
                         RadialSampler, integrate_radial_err, sample_group_points,
                         sphere_measure)

_MODULE = "operators"

_FD_REL_STEP = 1e-6
_FD_ABS_STEP = 1e-9


@dataclass(frozen=True)
class RadialProfile:
    """A scalar profile r -> value(r) on (0, inf) with its decay envelope.

    ``derivative`` is the analytic radial derivative when registered;
    otherwise central differences with step h = r*1e-6 + 1e-9 are used.
    The envelope declares the decay used for truncation radii and Monte
    Carlo importance sampling; ``derivative_envelope`` bounds |dF/dr|.
    """

    value: Callable[[np.ndarray], np.ndarray]
    envelope: DecayEnvelope
    derivative: Callable[[np.ndarray], np.ndarray] | None = None
    derivative_envelope: DecayEnvelope | None = None
    family_tag: str = "custom"
    params: tuple[float, ...] = ()
    monotone_decreasing: bool = False
    strictly_positive: bool = False
    support_radius: float = math.inf

    def __call__(self, r):
        return self.value(np.asarray(r, dtype=float))

    def deriv(self, r):
        r = np.asarray(r, dtype=float)
        if self.derivative is not None:
            return self.derivative(r)
        h = r * _FD_REL_STEP + _FD_ABS_STEP
        lo = np.maximum(r - h, 0.0)
        return (self.value(r + h) - self.value(lo)) / (r + h - lo)

    @property
    def deriv_envelope(self) -> DecayEnvelope:
        return self.derivative_envelope or self.envelope

    def dilated(self, s: float) -> "RadialProfile":
        """The profile of f(D_s x), i.e. r -> value(s r)."""
        if s <= 0:
            raise ParameterError("dilation factor must be positive",
                                 module=_MODULE, operation="RadialProfile.dilated")
        base_v, base_d = self.value, self.derivative
        return replace(
            self,
            value=lambda r: base_v(np.asarray(r, float) * s),
            derivative=(None if base_d is None
                        else lambda r: s * base_d(np.asarray(r, float) * s)),
            envelope=self.envelope.scaled(s),
            derivative_envelope=(None if self.derivative_envelope is None
                                 else self.derivative_envelope.scaled(s)),
            family_tag=f"{self.family_tag}|D_{s:g}",
            support_radius=self.support_radius / s,
        )

    def check_decreasing(self, n: int = 1000, operation: str = "profile"):
        """Verify derivative <= 0 on a log grid (hypothesis of the reverse
        Hardy/Sobolev/CKN class)."""
        hi = min(self.support_radius, self.envelope.r_max(1.0, 1e-10))
        r = np.geomspace(hi * 1e-6, hi * (1 - 1e-9), n)
        d = self.deriv(r)
        scale = float(np.max(np.abs(d))) + 1e-300
        if np.any(d > 1e-8 * scale):
            bad = r[np.argmax(d)]
            raise ParameterError(
                f"profile is not radially decreasing (derivative > 0 near "
                f"r={bad:g})", module=_MODULE, operation=operation)


@dataclass(frozen=True)
class WeightSpec:
    """A power weight |x|^exponent and the side of the inequality it sits on."""

    exponent: float
    role: str = "W_outer"       # "W_outer" | "U_inner"

    def __post_init__(self):
        if not math.isfinite(self.exponent):
            raise ParameterError("weight exponent must be finite",
                                 module=_MODULE, operation="WeightSpec")
        if self.role not in ("W_outer", "U_inner"):
            raise ParameterError(f"unknown weight role {self.role!r}",
                                 module=_MODULE, operation="WeightSpec")


# ---------------------------------------------------------------------------
# radial L^p machinery
# ---------------------------------------------------------------------------

def weighted_p_integral(profile: RadialProfile, p: float, power_shift: float,
                        Q: float, *, use_derivative: bool = False,
                        r_min: float = 0.0, r_max: float | None = None,
                        ) -> tuple[float, float]:
    """(int |F(r)|^p r^{power_shift} r^{Q-1} dr, error estimate).

    With use_derivative the integrand uses |dF/dr| instead of F.  The upper
    limit defaults to the envelope-based truncation radius of the integrand
    (|F|^p r^shift), beyond which its mass is below 1e-8 of the total.
    """
    if p == 0:
        raise ParameterError("p must be nonzero", module=_MODULE,
                             operation="weighted_p_integral")
    env = (profile.deriv_envelope if use_derivative else profile.envelope)
    env = env.powered(p).boosted(power_shift) if p > 0 else env
    if r_max is None:
        if p < 0:
            raise ParameterError(
                "negative exponents need an explicit truncation radius",
                module=_MODULE, operation="weighted_p_integral")
        env.check_integrable(Q, "weighted_p_integral")
        r_max = min(env.r_max(Q), profile.support_radius)

    fn = profile.deriv if use_derivative else profile.value

    def integrand(r):
        return np.abs(fn(r)) ** p * r ** power_shift

    return integrate_radial_err(integrand, Q, r_min, r_max)


def lp_functional(profile: RadialProfile, p: float, group: HomogeneousGroup,
                  norm: QuasiNorm, spec: QuadratureSpec) -> float:
    """( |S| int F(r)^p r^{Q-1} dr )^{1/p} for any p != 0.

    For p < 0 the profile must be strictly positive on the integration
    window [inner_cutoff, truncation_radius]: a zero value would make the
    integrand +inf under the 0^q = (+inf)^{-q} = +inf convention for
    negative exponents, so it is rejected as degenerate input instead.
    """
    if p == 0:
        raise ParameterError("p must be nonzero", module=_MODULE,
                             operation="lp_functional")
    Q = group.homogeneous_dim
    if p < 0:
        if spec.truncation_radius is None:
            raise ParameterError(
                "p < 0 requires an explicit truncation_radius in the spec",
                module=_MODULE, operation="lp_functional")
        _require_positive(profile, spec, "lp_functional")
    val, _ = weighted_p_integral(profile, p, 0.0, Q,
                                 r_min=spec.inner_cutoff,
                                 r_max=spec.truncation_radius)
    S = sphere_measure(group, norm, spec).value
    return float((S * val) ** (1.0 / p))


def _require_positive(profile: RadialProfile, spec: QuadratureSpec, op: str):
    hi = spec.truncation_radius or min(profile.support_radius,
                                       profile.envelope.r_max(1.0))
    r = np.geomspace(max(spec.inner_cutoff, hi * 1e-9), hi, 512)
    if not (profile.strictly_positive or bool(np.all(profile(r) > 0.0))):
        raise DegenerateInputError(
            "profile vanishes on the integration window; under the negative-"
            "exponent convention 0^q = (+inf)^{-q} = +inf the integral "
            "degenerates", module=_MODULE, operation=op)


# ---------------------------------------------------------------------------
# potentials and bilinear forms
# ---------------------------------------------------------------------------

def riesz_potential(group: HomogeneousGroup, norm: QuasiNorm,
                    u: RadialProfile, lam: float, x,
                    spec: QuadratureSpec) -> IntegralResult:
    """I_л u(x) = int_G |y^{-1} x|^л u(|y|) dy with growing kernel л > 0."""
    if lam <= 0:
        raise ParameterError("lambda must be positive", module=_MODULE,
                             operation="riesz_potential")
    Q = group.homogeneous_dim
    env = u.envelope.boosted(lam)
    env.check_integrable(Q, "riesz_potential")   # growth must not beat decay

    x = np.asarray(x, dtype=float)
    if np.allclose(x, 0.0):
        # |y^{-1} 0| = |y|: purely radial
        r_hi = min(env.r_max(Q), u.support_radius)
        val, err = integrate_radial_err(lambda r: r ** lam * u(r), Q,
                                        spec.inner_cutoff, r_hi)
        S = sphere_measure(group, norm, spec)
        return IntegralResult(S.value * val,
                              S.stderr * abs(val) + S.value * err,
                              S.samples_used)

    rng = np.random.default_rng(spec.seed)
    r_hi = min(env.r_max(Q), u.support_radius)
    sampler = RadialSampler(u.envelope.boosted(max(lam - 1.0, 0.0)), Q,
                            spec.inner_cutoff, r_hi)
    y, _, w = sample_group_points(group, sampler, spec.sample_count, rng)
    kern = norm(group_mul(group, group_inv(group, y), x)) ** lam
    vals = kern * u(norm(y)) * w
    n = spec.sample_count
    value = float(np.sum(vals) / n)
    if not np.all(np.isfinite(vals)) or abs(value) > 1e280:
        return IntegralResult(math.inf, math.inf, n, divergent=True)
    return IntegralResult(value, float(np.std(vals, ddof=1) / math.sqrt(n)), n)


def stein_weiss_form(f: RadialProfile, h: RadialProfile, alpha: float,
                     beta: float, lam: float, group: HomogeneousGroup,
                     norm: QuasiNorm, spec: QuadratureSpec) -> IntegralResult:
    """Monte Carlo estimate of the doubly weighted bilinear form

        B(f, h) = int int |x|^alpha |y^{-1}x|^л f(|x|) h(|y|) |y|^beta dx dy.

    x and y are drawn independently, each from its profile's envelope with a
    polynomial boost of alpha + л/2 (resp. beta + л/2) so the kernel growth
    is shared between the two radial proposals.
    """
    if lam <= 0:
        raise ParameterError("lambda must be positive", module=_MODULE,
                             operation="stein_weiss_form")
    Q = group.homogeneous_dim
    env_x = f.envelope.boosted(alpha + lam / 2.0)
    env_y = h.envelope.boosted(beta + lam / 2.0)
    for env, side in ((env_x, "f"), (env_y, "h")):
        env.boosted(lam / 2.0).check_integrable(
            Q, f"stein_weiss_form[{side}-side]")

    rng = np.random.default_rng(spec.seed)
    n = spec.sample_count
    sx = RadialSampler(env_x, Q, spec.inner_cutoff,
                       min(env_x.boosted(lam / 2.0).r_max(Q), f.support_radius))
    sy = RadialSampler(env_y, Q, spec.inner_cutoff,
                       min(env_y.boosted(lam / 2.0).r_max(Q), h.support_radius))
    x, _, wx = sample_group_points(group, sx, n, rng)
    y, _, wy = sample_group_points(group, sy, n, rng)

    gx, gy = norm(x), norm(y)
    kern = norm(group_mul(group, group_inv(group, y), x)) ** lam
    with np.errstate(over="ignore"):
        vals = (f(gx) * gx ** alpha * wx) * (h(gy) * gy ** beta * wy) * kern

    if np.any(np.isnan(vals)):
        raise EvaluationError("bilinear form integrand returned NaN",
                              module=_MODULE, operation="stein_weiss_form")
    value = float(np.sum(vals) / n)
    if not np.all(np.isfinite(vals)) or abs(value) > 1e280:
        return IntegralResult(math.inf, math.inf, n, divergent=True)
    return IntegralResult(value, float(np.std(vals, ddof=1) / math.sqrt(n)), n)


# ---------------------------------------------------------------------------
# derivative operators
# ---------------------------------------------------------------------------

def radial_derivative(profile: RadialProfile) -> RadialProfile:
    """The radial derivative dF/d r as a new profile."""
    return RadialProfile(
        value=profile.deriv,
        envelope=profile.deriv_envelope,
        family_tag=f"R[{profile.family_tag}]",
        params=profile.params,
        support_radius=profile.support_radius,
    )


def euler_apply(profile: RadialProfile) -> RadialProfile:
    """The Euler operator r dF/dr as a new profile."""
    base = profile.deriv
    return RadialProfile(
        value=lambda r: np.asarray(r, float) * base(r),
        envelope=profile.deriv_envelope.boosted(1.0),
        family_tag=f"E[{profile.family_tag}]",
        params=profile.params,
        support_radius=profile.support_radius,
    )


# ---------------------------------------------------------------------------
# reverse Hoelder gap
# ---------------------------------------------------------------------------

def reverse_holder_gap(f, g, p: float, group: HomogeneousGroup | None = None,
                       norm: QuasiNorm | None = None,
                       spec: QuadratureSpec | None = None) -> float:
    """gap = int f g - (int f^p)^{1/p} (int g^{p'})^{1/p'} for p in (0,1).

    For nonnegative f and strictly positive g the reverse Hoelder inequality
    makes the gap nonnegative (up to quadrature noise) on any measure space,
    in particular on the truncated group window actually integrated.

    Accepts either two 1-D sample arrays (counting measure) or two radial
    profiles together with (group, norm, spec).
    """
    if not 0.0 < p < 1.0:
        raise ParameterError("p must lie in (0, 1)", module=_MODULE,
                             operation="reverse_holder_gap")
    pp = p / (p - 1.0)

    if isinstance(f, np.ndarray) or isinstance(f, (list, tuple)):
        fv = np.asarray(f, dtype=float)
        gv = np.asarray(g, dtype=float)
        if fv.shape != gv.shape:
            raise ParameterError("sample arrays must have matching shapes",
                                 module=_MODULE, operation="reverse_holder_gap")
        if np.any(fv < 0):
            raise ParameterError("f must be nonnegative", module=_MODULE,
                                 operation="reverse_holder_gap")
        if np.any(gv <= 0):
            raise DegenerateInputError(
                "g vanishes at a sample; 0^{p'} = +inf for p' < 0",
                module=_MODULE, operation="reverse_holder_gap")
        lhs = float(np.sum(fv * gv))
        rhs = float(np.sum(fv ** p) ** (1.0 / p) * np.sum(gv ** pp) ** (1.0 / pp))
        return lhs - rhs

    if group is None or norm is None or spec is None:
        raise ParameterError("profile form needs group, norm and spec",
                             module=_MODULE, operation="reverse_holder_gap")
    Q = group.homogeneous_dim
    r_hi = spec.truncation_radius or min(f.envelope.r_max(Q),
                                         f.support_radius)
    r_lo = spec.inner_cutoff
    _require_positive(replace(g, support_radius=math.inf),
                      replace(spec, truncation_radius=r_hi),
                      "reverse_holder_gap")
    S = sphere_measure(group, norm, spec).value
    prod, _ = integrate_radial_err(lambda r: f(r) * g(r), Q, r_lo, r_hi)
    fp, _ = integrate_radial_err(lambda r: np.abs(f(r)) ** p, Q, r_lo, r_hi)
    gp, _ = integrate_radial_err(lambda r: g(r) ** pp, Q, r_lo, r_hi)
    if gp <= 0 or not math.isfinite(gp):
        raise DegenerateInputError("int g^{p'} must be positive and finite",
                                   module=_MODULE, operation="reverse_holder_gap")
    return float(S * prod - (S * fp) ** (1.0 / p) * (S * gp) ** (1.0 / pp))


# ---------------------------------------------------------------------------
# pointwise kernel bounds from the proof's two regimes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KernelBoundReport:
    """Sampled check of the two triangle-inequality kernel bounds:

    inner regime |y| <= |x|/2  =>  |x|/2 <= |y^{-1}x|  (so 2^{-л}|x|^л <= |y^{-1}x|^л),
    outer regime 2|x| <= |y|   =>  |y|/2 <= |y^{-1}x|.
    """

    samples: int
    inner_violations: int
    outer_violations: int
    inner_worst: float          # max of |x|/2 - |y^{-1}x| (<= 0 when clean)
    outer_worst: float

    @property
    def clean(self) -> bool:
        return self.inner_violations == 0 and self.outer_violations == 0


def kernel_bound_report(group: HomogeneousGroup, norm: QuasiNorm,
                        sample_count: int = 10000, seed: int = 0,
                        ) -> KernelBoundReport:
    """Sample admissible pairs directly in each regime and test the bounds.

    Requires a gauge satisfying the triangle inequality; the bounds are a
    consequence of subadditivity plus symmetry, so violations indicate a
    broken norm implementation.
    """
    if not norm.is_true_norm:
        raise ParameterError("kernel bounds require a true norm (triangle "
                             "inequality asserted)", module=_MODULE,
                             operation="kernel_bound_report")
    rng = np.random.default_rng(seed)
    n = sample_count
    scales = 10.0 ** rng.uniform(-2, 2, size=(n, 1))
    x = rng.standard_normal((n, group.dim)) * scales
    nx = norm(x)

    # inner: y with |y| = frac * |x|/2, frac in (0, 1]; directions drawn on
    # the unit quasi-sphere via dilation by 1/|y0|
    y0 = rng.standard_normal((n, group.dim))
    y0 = dilate(group, 1.0 / norm(y0), y0)
    frac = rng.uniform(1e-3, 1.0, size=n)
    y_in = dilate(group, frac * nx / 2.0, y0)
    d_in = norm(group_mul(group, group_inv(group, y_in), x))
    inner_gap = nx / 2.0 - d_in

    # outer: y with |y| = (2 + spread) * |x|
    spread = rng.uniform(0.0, 8.0, size=n)
    y_out = dilate(group, (2.0 + spread) * nx, y0)
    ny_out = norm(y_out)
    d_out = norm(group_mul(group, group_inv(group, y_out), x))
    outer_gap = ny_out / 2.0 - d_out

    tol = 1e-12
    return KernelBoundReport(
        samples=n,
        inner_violations=int(np.sum(inner_gap > tol * np.maximum(nx, 1.0))),
        outer_violations=int(np.sum(outer_gap > tol * np.maximum(ny_out, 1.0))),
        inner_worst=float(np.max(inner_gap)),
        outer_worst=float(np.max(outer_gap)),
    )
