"""Admissibility, analytic constants, and numerical inequality verifiers.

Conventions used throughout:

* Conjugate exponents are always derived, never stored: p' = p/(p-1) and
  q = q'/(q'-1).  For p, q' in (0, 1) both conjugates are negative.
* A verification report carries the two functional sides WITHOUT the
  analytic constant: ``ratio = lhs / rhs`` is compared against
  ``analytic_constant`` with direction "lower" (reverse inequalities,
  ratio >= constant) or "upper" (forward cross-checks, ratio <= constant).
  ``passed`` is recomputed from the stored fields, never set directly, with
  tolerance 3 x combined stderr plus an absolute floor of 1e-9.
* The certified lower constant for the weighted bilinear form uses the
  certified ends kappa*A1, kappa*A2 of the best-constant brackets, since
  only those ends are guaranteed:  A >= C >= kappa * A  with
  kappa = (p'/(p'+q))^{-1/q} (q/(p'+q))^{-1/p'}.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .exceptions import (DegenerateInputError, DivergenceError,
                         ParameterError, PreconditionError)
from .groups import HomogeneousGroup, QuasiNorm
from .operators import (RadialProfile, WeightSpec, lp_functional,
                        stein_weiss_form, weighted_p_integral)
from .quadrature import (DecayEnvelope, QuadratureSpec, integrate_radial_err,
                         sphere_measure)

_MODULE = "inequalities"

_ABS_TOL_FLOOR = 1e-9
_BALANCE_TOL = 1e-12


def conjugate_exponent(p: float) -> float:
    """p' = p/(p-1); an involution, negative exactly when p in (0, 1)."""
    if p == 1.0:
        raise ParameterError("p = 1 has no conjugate exponent",
                             module=_MODULE, operation="conjugate_exponent")
    return p / (p - 1.0)


def balanced_lambda(Q: float, p: float, q_prime: float,
                    alpha: float = 0.0, beta: float = 0.0) -> float:
    """The kernel exponent fixed by the balance condition
    1/q' + 1/p = (alpha+beta+lambda)/Q + 2."""
    return Q * (1.0 / q_prime + 1.0 / p - 2.0) - alpha - beta


# ---------------------------------------------------------------------------
# parameters and admissibility
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InequalityParams:
    """Exponent tuple for the weighted bilinear (Stein-Weiss type) setting.

    variant:
      "full"        both weight sign conditions required,
      "improved_a"  only 0 <= alpha < -Q/q required,
      "improved_b"  only 0 <= beta < -Q/p' required.
    gamma is only meaningful for the Caffarelli-Kohn-Nirenberg setting and
    is always alpha + beta + 1 there.
    """

    Q: float
    p: float
    q_prime: float = float("nan")
    lam: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float | None = None
    variant: str = "full"

    def __post_init__(self):
        if self.variant not in ("full", "improved_a", "improved_b"):
            raise ParameterError(f"unknown variant {self.variant!r}",
                                 module=_MODULE, operation="InequalityParams")

    @property
    def p_prime(self) -> float:
        return conjugate_exponent(self.p)

    @property
    def q(self) -> float:
        return conjugate_exponent(self.q_prime)

    @property
    def balance_residual(self) -> float:
        return (1.0 / self.q_prime + 1.0 / self.p
                - (self.alpha + self.beta + self.lam) / self.Q - 2.0)

    def as_dict(self) -> dict:
        d = {"Q": self.Q, "p": self.p, "q_prime": self.q_prime,
             "lambda": self.lam, "alpha": self.alpha, "beta": self.beta,
             "variant": self.variant}
        if self.gamma is not None:
            d["gamma"] = self.gamma
        if not math.isnan(self.q_prime):
            d["p_prime"] = self.p_prime
            d["q"] = self.q
        return d


@dataclass(frozen=True)
class ConditionCheck:
    name: str
    satisfied: bool
    required: bool
    detail: str


@dataclass(frozen=True)
class AdmissibilityReport:
    params: InequalityParams
    conditions: tuple[ConditionCheck, ...]

    @property
    def admissible(self) -> bool:
        return all(c.satisfied for c in self.conditions if c.required)

    @property
    def failures(self) -> list[str]:
        return [c.name for c in self.conditions if c.required and not c.satisfied]

    @property
    def unverified(self) -> list[str]:
        """Hypotheses the chosen variant does not require; evaluated but not
        enforced (reported so nothing is silently assumed)."""
        return [c.name for c in self.conditions
                if not c.required and not c.satisfied]


def validate_params(params: InequalityParams) -> AdmissibilityReport:
    """Check every hypothesis of the weighted bilinear lower bound and the
    derived sign facts its two-regime proof needs; report-only."""
    P = params
    q, pp = P.q, P.p_prime
    full = P.variant == "full"
    need_alpha = full or P.variant == "improved_a"
    need_beta = full or P.variant == "improved_b"

    checks = [
        ConditionCheck("p in (0,1)", 0.0 < P.p < 1.0, True, f"p={P.p:g}"),
        ConditionCheck("q' in (0,1)", 0.0 < P.q_prime < 1.0, True,
                       f"q'={P.q_prime:g}"),
        ConditionCheck("lambda > 0", P.lam > 0.0, True, f"lambda={P.lam:g}"),
        ConditionCheck("balance 1/q'+1/p = (alpha+beta+lambda)/Q + 2",
                       abs(P.balance_residual) <= _BALANCE_TOL, True,
                       f"residual={P.balance_residual:.3e}"),
        ConditionCheck("0 <= alpha", P.alpha >= 0.0, need_alpha,
                       f"alpha={P.alpha:g}"),
        ConditionCheck("alpha < -Q/q", P.alpha < -P.Q / q, need_alpha,
                       f"alpha={P.alpha:g}, -Q/q={-P.Q / q:g}"),
        ConditionCheck("0 <= beta", P.beta >= 0.0, need_beta,
                       f"beta={P.beta:g}"),
        ConditionCheck("beta < -Q/p'", P.beta < -P.Q / pp, need_beta,
                       f"beta={P.beta:g}, -Q/p'={-P.Q / pp:g}"),
        # derived facts used by the two regimes of the proof
        ConditionCheck("Q + (alpha+lambda) q < 0 [inner regime]",
                       P.Q + (P.alpha + P.lam) * q < 0.0, need_beta,
                       f"value={P.Q + (P.alpha + P.lam) * q:g}"),
        ConditionCheck("Q - beta p (1-p') > 0 [inner regime]",
                       P.Q - P.beta * P.p * (1.0 - pp) > 0.0, need_beta,
                       f"value={P.Q - P.beta * P.p * (1.0 - pp):g}"),
        ConditionCheck("Q + alpha q > 0 [outer regime]",
                       P.Q + P.alpha * q > 0.0, need_alpha,
                       f"value={P.Q + P.alpha * q:g}"),
        ConditionCheck("Q + (beta+lambda) p' < 0 [outer regime]",
                       P.Q + (P.beta + P.lam) * pp < 0.0, need_alpha,
                       f"value={P.Q + (P.beta + P.lam) * pp:g}"),
    ]
    return AdmissibilityReport(params=P, conditions=tuple(checks))


def _require_admissible(params: InequalityParams, operation: str):
    rep = validate_params(params)
    if not rep.admissible:
        raise ParameterError("inadmissible parameters: "
                             + "; ".join(rep.failures),
                             module=_MODULE, operation=operation)
    return rep


# ---------------------------------------------------------------------------
# analytic constants
# ---------------------------------------------------------------------------

def analytic_A1(params: InequalityParams, sphere: float) -> float:
    """Characteristic constant of the inner-ball weighted pair
    W = |x|^{(alpha+lambda)q}, U = |y|^{-beta p}:

        A1 = (|S| / |Q+(alpha+lambda)q|)^{1/q} (|S| / (Q - beta p (1-p')))^{1/p'}.
    """
    P, q, pp = params, params.q, params.p_prime
    d1 = P.Q + (P.alpha + P.lam) * q
    d2 = P.Q - P.beta * P.p * (1.0 - pp)
    if d1 >= 0.0:
        raise ParameterError("Q + (alpha+lambda) q < 0 violated; outer tail "
                             "of W diverges", module=_MODULE,
                             operation="analytic_A1")
    if d2 <= 0.0:
        raise ParameterError("Q - beta p (1-p') > 0 violated (needs beta < "
                             "-Q/p')", module=_MODULE, operation="analytic_A1")
    return float((sphere / abs(d1)) ** (1.0 / q) * (sphere / d2) ** (1.0 / pp))


def analytic_A2(params: InequalityParams, sphere: float) -> float:
    """Characteristic constant of the outer-tail weighted pair
    W = |x|^{alpha q}, U = |y|^{-(beta+lambda) p}:

        A2 = (|S| / (Q + alpha q))^{1/q} (|S| / |Q+(beta+lambda)p'|)^{1/p'}.
    """
    P, q, pp = params, params.q, params.p_prime
    d1 = P.Q + P.alpha * q
    d2 = P.Q + (P.beta + P.lam) * pp
    if d1 <= 0.0:
        raise ParameterError("Q + alpha q > 0 violated (needs alpha < -Q/q)",
                             module=_MODULE, operation="analytic_A2")
    if d2 >= 0.0:
        raise ParameterError("Q + (beta+lambda) p' < 0 violated; outer tail "
                             "of U^{1-p'} diverges", module=_MODULE,
                             operation="analytic_A2")
    return float((sphere / d1) ** (1.0 / q) * (sphere / abs(d2)) ** (1.0 / pp))


@dataclass(frozen=True)
class ConstantBracket:
    """Bracket [kappa A, A] for a biggest constant characterized by A."""

    A: float
    kappa: float

    @property
    def lower(self) -> float:
        return self.kappa * self.A

    @property
    def upper(self) -> float:
        return self.A


def bracket_kappa(p_prime: float, q: float) -> float:
    """kappa = (p'/(p'+q))^{-1/q} (q/(p'+q))^{-1/p'}, in (0, 1] for
    negative conjugates."""
    if p_prime >= 0.0 or q >= 0.0:
        raise ParameterError("bracket requires p' < 0 and q < 0",
                             module=_MODULE, operation="bracket_kappa")
    s = p_prime + q
    return float((p_prime / s) ** (-1.0 / q) * (q / s) ** (-1.0 / p_prime))


def constant_bracket(A: float, p_prime: float, q: float) -> ConstantBracket:
    if A <= 0:
        raise ParameterError("A must be positive", module=_MODULE,
                             operation="constant_bracket")
    return ConstantBracket(A=A, kappa=bracket_kappa(p_prime, q))


def stein_weiss_lower_constant(params: InequalityParams, sphere: float) -> float:
    """Certified lower bound for the bilinear-form constant.

    full:        2^{-lambda-1} kappa (A1 + A2)   (both regimes, averaged),
    improved_a:  2^{-lambda}   kappa A2          (outer regime only),
    improved_b:  2^{-lambda}   kappa A1          (inner regime only).
    """
    _require_admissible(params, "stein_weiss_lower_constant")
    kap = bracket_kappa(params.p_prime, params.q)
    if params.variant == "improved_a":
        return 2.0 ** (-params.lam) * kap * analytic_A2(params, sphere)
    if params.variant == "improved_b":
        return 2.0 ** (-params.lam) * kap * analytic_A1(params, sphere)
    a1 = analytic_A1(params, sphere)
    a2 = analytic_A2(params, sphere)
    return 2.0 ** (-params.lam - 1.0) * kap * (a1 + a2)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    """Outcome of one inequality check.

    lhs and rhs are the two functional sides without the analytic constant;
    ratio = lhs/rhs; direction "lower" passes when ratio >= constant within
    tolerance, "upper" when ratio <= constant.
    """

    inequality: str
    params: dict
    lhs: float
    rhs: float
    analytic_constant: float
    direction: str = "lower"
    stderr: float = 0.0
    lhs_stderr: float = 0.0
    rhs_stderr: float = 0.0
    sphere_value: float = float("nan")
    sphere_stderr: float = 0.0
    runtime_seconds: float = 0.0
    degenerate: str | None = None
    extras: dict = field(default_factory=dict)

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs if self.rhs != 0 else math.inf

    @property
    def margin(self) -> float:
        if self.direction == "upper":
            return self.analytic_constant - self.ratio
        return self.ratio - self.analytic_constant

    @property
    def tolerance(self) -> float:
        return 3.0 * self.stderr + _ABS_TOL_FLOOR

    @property
    def passed(self) -> bool:
        return self.degenerate is None and self.margin >= -self.tolerance

    def as_dict(self) -> dict:
        return {
            "inequality": self.inequality,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "ratio": self.ratio,
            "analytic_constant": self.analytic_constant,
            "margin": self.margin,
            "direction": self.direction,
            "stderr": self.stderr,
            "lhs_stderr": self.lhs_stderr,
            "rhs_stderr": self.rhs_stderr,
            "sphere": {"value": self.sphere_value, "stderr": self.sphere_stderr},
            "pass": self.passed,
            "degenerate": self.degenerate,
            "extras": self.extras,
        }


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.runtime_seconds = time.perf_counter() - t0
        return rep
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ---------------------------------------------------------------------------
# pointwise reverse inequalities (radial pipeline)
# ---------------------------------------------------------------------------

def _check_reverse_profile(f: RadialProfile, p: float, operation: str):
    if not 0.0 < p < 1.0:
        raise ParameterError(f"p must lie in (0,1), got {p:g}",
                             module=_MODULE, operation=operation)
    if not f.monotone_decreasing:
        raise PreconditionError("profile is not tagged radially decreasing",
                                module=_MODULE, operation=operation)
    f.check_decreasing(operation=operation)


def _ratio_report(name, params, num, den, constant, S, direction="lower",
                  extras=None) -> VerificationReport:
    (nv, ne), (dv, de) = num, den
    if dv == 0.0:
        raise DegenerateInputError("rhs functional is zero; ratio undefined",
                                   module=_MODULE, operation=name)
    rel = ne / abs(nv) if nv else 0.0
    rel += de / abs(dv)
    ratio_err = abs(nv / dv) * rel
    return VerificationReport(
        inequality=name, params=params, lhs=nv, rhs=dv,
        analytic_constant=constant, direction=direction,
        stderr=ratio_err, lhs_stderr=ne, rhs_stderr=de,
        sphere_value=S.value, sphere_stderr=S.stderr,
        extras=extras or {},
    )


@_timed
def verify_reverse_hardy(f: RadialProfile, p: float, group: HomogeneousGroup,
                         norm: QuasiNorm, spec: QuadratureSpec) -> VerificationReport:
    """||f/|x|||_p >= p/(Q-p) ||dF/dr||_p for radially decreasing f, p in (0,1)."""
    _check_reverse_profile(f, p, "verify_reverse_hardy")
    Q = group.homogeneous_dim
    if Q - p <= 0:
        raise ParameterError("requires Q > p", module=_MODULE,
                             operation="verify_reverse_hardy")
    S = sphere_measure(group, norm, spec)
    il, el = weighted_p_integral(f, p, -p, Q)
    ir, er = weighted_p_integral(f, p, 0.0, Q, use_derivative=True)
    num = (il ** (1.0 / p), el / abs(il) * il ** (1.0 / p) / p if il else 0.0)
    den = (ir ** (1.0 / p), er / abs(ir) * ir ** (1.0 / p) / p if ir else 0.0)
    return _ratio_report("reverse_hardy", {"Q": Q, "p": p}, num, den,
                         p / (Q - p), S)


@_timed
def verify_reverse_sobolev(f: RadialProfile, p: float, group: HomogeneousGroup,
                           norm: QuasiNorm, spec: QuadratureSpec) -> VerificationReport:
    """||f||_p >= (p/Q) ||r dF/dr||_p for radially decreasing f, p in (0,1)."""
    _check_reverse_profile(f, p, "verify_reverse_sobolev")
    Q = group.homogeneous_dim
    S = sphere_measure(group, norm, spec)
    il, el = weighted_p_integral(f, p, 0.0, Q)
    ir, er = weighted_p_integral(f, p, p, Q, use_derivative=True)
    num = (il ** (1.0 / p), el / abs(il) * il ** (1.0 / p) / p if il else 0.0)
    den = (ir ** (1.0 / p), er / abs(ir) * ir ** (1.0 / p) / p if ir else 0.0)
    return _ratio_report("reverse_sobolev", {"Q": Q, "p": p}, num, den,
                         p / Q, S)


@_timed
def verify_reverse_ckn(f: RadialProfile, p: float, alpha: float, beta: float,
                       group: HomogeneousGroup, norm: QuasiNorm,
                       spec: QuadratureSpec) -> VerificationReport:
    """||f/|x|^{g/p}||_p^p >= p/(Q-g) ||F'/|x|^a||_p ||f/|x|^{b/(p-1)}||_p^{p-1},
    g = a + b + 1 < Q, for radially decreasing f and p in (0, 1)."""
    _check_reverse_profile(f, p, "verify_reverse_ckn")
    Q = group.homogeneous_dim
    gamma = alpha + beta + 1.0
    if gamma >= Q:
        raise ParameterError(f"requires gamma = alpha+beta+1 < Q "
                             f"(gamma={gamma:g}, Q={Q:g})",
                             module=_MODULE, operation="verify_reverse_ckn")
    if Q <= alpha * p:
        raise ParameterError("requires Q > alpha p for profiles positive at "
                             "the origin", module=_MODULE,
                             operation="verify_reverse_ckn")
    S = sphere_measure(group, norm, spec)
    il, el = weighted_p_integral(f, p, -gamma, Q)
    ia, ea = weighted_p_integral(f, p, -alpha * p, Q, use_derivative=True)
    ib, eb = weighted_p_integral(f, p, -beta * p / (p - 1.0), Q)
    den_v = ia ** (1.0 / p) * ib ** ((p - 1.0) / p)
    den_e = den_v * (ea / abs(ia) / p + eb / abs(ib) * abs(p - 1.0) / p)
    return _ratio_report(
        "reverse_ckn",
        {"Q": Q, "p": p, "alpha": alpha, "beta": beta, "gamma": gamma},
        (il, el), (den_v, den_e), p / (Q - gamma), S)


# ---------------------------------------------------------------------------
# weighted bilinear form (Stein-Weiss type) and its unweighted corollary
# ---------------------------------------------------------------------------

@_timed
def verify_stein_weiss(f: RadialProfile, h: RadialProfile,
                       params: InequalityParams, group: HomogeneousGroup,
                       norm: QuasiNorm, spec: QuadratureSpec) -> VerificationReport:
    """B(f,h) >= C ||f||_{q'} ||h||_p with the certified constant C."""
    _require_admissible(params, "verify_stein_weiss")
    if abs(params.Q - group.homogeneous_dim) > 1e-12:
        raise ParameterError("params.Q does not match the group",
                             module=_MODULE, operation="verify_stein_weiss")
    S = sphere_measure(group, norm, spec)
    B = stein_weiss_form(f, h, params.alpha, params.beta, params.lam,
                         group, norm, spec)
    if B.divergent:
        raise DivergenceError("bilinear form estimate diverged; tighten the "
                              "trial decay or reduce lambda", module=_MODULE,
                              operation="verify_stein_weiss")
    nf = lp_functional(f, params.q_prime, group, norm, spec)
    nh = lp_functional(h, params.p, group, norm, spec)
    if nf == 0.0 or nh == 0.0:
        raise DegenerateInputError("a trial profile has zero quasi-norm",
                                   module=_MODULE, operation="verify_stein_weiss")
    const = stein_weiss_lower_constant(params, S.value)
    # constant depends on |S| through S^{1/q + 1/p'}; propagate its stderr
    s_expo = abs(1.0 / params.q + 1.0 / params.p_prime)
    const_err = const * s_expo * (S.stderr / S.value)
    den = nf * nh
    return VerificationReport(
        inequality="reverse_stein_weiss" if params.variant == "full"
        else f"reverse_stein_weiss[{params.variant}]",
        params=params.as_dict(),
        lhs=B.value, rhs=den, analytic_constant=const,
        stderr=B.stderr / den + const_err,
        lhs_stderr=B.stderr, rhs_stderr=0.0,
        sphere_value=S.value, sphere_stderr=S.stderr,
        extras={"f": f.family_tag, "h": h.family_tag,
                "constant_stderr": const_err},
    )


def verify_reverse_hls(f: RadialProfile, h: RadialProfile,
                       params: InequalityParams, group: HomogeneousGroup,
                       norm: QuasiNorm, spec: QuadratureSpec) -> VerificationReport:
    """The unweighted corollary (alpha = beta = 0) of the bilinear bound."""
    if params.alpha != 0.0 or params.beta != 0.0:
        raise ParameterError("the unweighted corollary requires "
                             "alpha = beta = 0", module=_MODULE,
                             operation="verify_reverse_hls")
    rep = verify_stein_weiss(f, h, params, group, norm, spec)
    rep.inequality = "reverse_hls"
    return rep


# ---------------------------------------------------------------------------
# reverse integral Hardy pair
# ---------------------------------------------------------------------------

def _inner_cumulative(f: RadialProfile, Q: float, sphere: float,
                      r_hi: float, n: int = 4096):
    """G(r) = |S| int_0^r F(t) t^{Q-1} dt on a log grid, plus the total."""
    grid = np.concatenate([[0.0], np.geomspace(r_hi * 1e-10, r_hi, n)])
    vals = f(grid[1:]) * grid[1:] ** (Q - 1.0)
    vals = np.concatenate([[0.0], vals])
    seg = 0.5 * (vals[1:] + vals[:-1]) * np.diff(grid)
    cum = sphere * np.concatenate([[0.0], np.cumsum(seg)])
    return grid, cum


@_timed
def verify_reverse_integral_hardy(variant: str, W: WeightSpec, U: WeightSpec,
                                  f: RadialProfile, p: float, q: float,
                                  group: HomogeneousGroup, norm: QuasiNorm,
                                  spec: QuadratureSpec) -> VerificationReport:
    """Reverse integral Hardy inequality with power weights, both variants:

    ball:        [int ( int_{B(0,|x|)} f )^q W dx]^{1/q}  >= C (int f^p U dx)^{1/p},
    complement:  [int ( int_{G \\ B(0,|x|)} f )^q W dx]^{1/q} >= C (...),

    with the certified constant C = kappa * A (A finite and positive exactly
    when the weight exponents satisfy the tail/ball conditions and the scale
    exponent of the characteristic quantity vanishes).

    Degeneracy note: with pure power weights the admissibility conditions
    force the outer integral to diverge for every profile of finite positive
    mass (inner regime: W is not locally integrable at the origin; outer
    regime: the inner integral's q-th power outgrows the weight's tail).
    Under the negative-exponent convention the left side then equals
    (+inf)^{1/q} = 0 and the report is returned with ``degenerate`` set and
    a truncated-window diagnostic in ``extras`` instead of a fake pass.
    """
    op = "verify_reverse_integral_hardy"
    if variant not in ("ball", "complement"):
        raise ParameterError(f"unknown variant {variant!r}", module=_MODULE,
                             operation=op)
    if not 0.0 < p < 1.0:
        raise ParameterError("p must lie in (0,1)", module=_MODULE, operation=op)
    if q >= 0.0:
        raise ParameterError("q must be negative", module=_MODULE, operation=op)
    if not f.strictly_positive:
        raise DegenerateInputError(
            "profile must be strictly positive (0^q = +inf convention)",
            module=_MODULE, operation=op)
    if W.role != "W_outer" or U.role != "U_inner":
        raise ParameterError("weights must be tagged W_outer / U_inner",
                             module=_MODULE, operation=op)

    Q = group.homogeneous_dim
    pp = conjugate_exponent(p)
    w, u = W.exponent, U.exponent
    mW, mU = Q + w, Q + u * (1.0 - pp)

    if variant == "ball":
        if mW >= 0.0:
            raise ParameterError("ball variant needs Q + w < 0 (finite outer "
                                 "tail of W)", module=_MODULE, operation=op)
        if mU <= 0.0:
            raise ParameterError("ball variant needs Q + u(1-p') > 0 (finite "
                                 "ball integral of U^{1-p'})",
                                 module=_MODULE, operation=op)
    else:
        if mW <= 0.0:
            raise ParameterError("complement variant needs Q + w > 0",
                                 module=_MODULE, operation=op)
        if mU >= 0.0:
            raise ParameterError("complement variant needs Q + u(1-p') < 0",
                                 module=_MODULE, operation=op)

    scale_expo = mW / q + mU / pp
    if abs(scale_expo) > 1e-10:
        raise ParameterError(
            f"characteristic quantity scales like |x|^{scale_expo:g}; its "
            "infimum over x != 0 vanishes, so A = 0", module=_MODULE,
            operation=op)

    S = sphere_measure(group, norm, spec)
    A = float((S.value / abs(mW)) ** (1.0 / q) * (S.value / abs(mU)) ** (1.0 / pp))
    kap = bracket_kappa(pp, q)

    env_rhs = f.envelope.powered(p).boosted(u)
    env_rhs.check_integrable(Q, op)
    r_rhs = min(env_rhs.r_max(Q), f.support_radius)
    iv, ie = integrate_radial_err(lambda r: np.abs(f(r)) ** p * r ** u, Q,
                                  0.0, r_rhs)
    rhs = float((S.value * iv) ** (1.0 / p))
    rhs_err = rhs * (ie / iv + S.stderr / S.value) / p

    # ---- divergence analysis of the outer integral ----
    degenerate = None
    if variant == "ball":
        if f.envelope.boost <= -Q:
            degenerate = ("profile is not integrable at the origin, so every "
                          "inner ball integral is +inf and the left side is "
                          "0^{1/q} = +inf (trivially true by the convention; "
                          "no numerical content)")
        elif Q * q + w + Q <= 0.0:
            # near 0 the inner integral grows like r^Q, so the outer
            # integrand is ~ r^{Qq + w + Q - 1}; with Q + w < 0 this is
            # never integrable
            degenerate = ("outer integral diverges at the origin "
                          f"(local exponent {Q * q + w + Q - 1.0:g} <= -1); "
                          "by the convention the left side is (+inf)^{1/q} = 0")
    else:
        kind = f.envelope.kind
        if kind in ("exp", "gauss"):
            degenerate = ("outer integral diverges at infinity: the inner "
                          "tail decays super-polynomially so its q-th power "
                          "outgrows every power weight")
        elif kind == "power":
            s_eff = f.envelope.shape - f.envelope.boost
            if s_eff <= Q:
                degenerate = ("profile is not integrable, so every outer-"
                              "complement inner integral is +inf and the "
                              "left side is 0^{1/q} = +inf (trivially true "
                              "by the convention; no numerical content)")
            elif (Q - s_eff) * q + w + Q >= 0.0:
                degenerate = ("outer integral diverges at infinity "
                              f"(tail exponent {(Q - s_eff) * q + w + Q - 1.0:g}"
                              " >= -1); left side degenerates to 0")
        else:
            degenerate = ("profile tail vanishes identically; inner integral "
                          "is 0 there and 0^q = +inf makes the outer integral "
                          "diverge")

    extras = {"A": A, "kappa": kap, "certified_constant": kap * A,
              "bracket": [kap * A, A], "variant": variant,
              "W_exponent": w, "U_exponent": u}

    if degenerate is None:
        # finite case: compute the outer integral through the cumulative
        r_hi = max(r_rhs, f.envelope.r_max(Q)) * 4.0
        grid, cum = _inner_cumulative(f, Q, S.value, r_hi)
        total = cum[-1]
        if variant == "ball":
            inner = lambda r: np.interp(r, grid, cum)
        else:
            inner = lambda r: np.maximum(total - np.interp(r, grid, cum), 0.0)
        ov, oe = integrate_radial_err(
            lambda r: inner(r) ** q * np.abs(r) ** w, Q, grid[1] * 4.0, r_hi,
            rtol=1e-8)
        lhs = float((S.value * ov) ** (1.0 / q))
        lhs_err = lhs * (oe / ov + S.stderr / S.value) / abs(q)
    elif "trivially true" in degenerate:
        lhs, lhs_err = math.inf, 0.0
    else:
        lhs, lhs_err = 0.0, 0.0
        # truncated-window diagnostic: the same functional with the outer
        # integral restricted to [r_lo, r_hi]; finite because the inner
        # integral is bounded away from 0 there
        r_hi = spec.truncation_radius or f.envelope.r_max(Q)
        r_lo = max(spec.inner_cutoff, r_hi * 1e-4)
        grid, cum = _inner_cumulative(f, Q, S.value, r_hi * 4.0)
        total = cum[-1]
        if variant == "ball":
            inner = lambda r: np.interp(r, grid, cum)
        else:
            inner = lambda r: np.maximum(total - np.interp(r, grid, cum),
                                         1e-300)
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")   # near-divergent by design
                tv, _ = integrate_radial_err(
                    lambda r: inner(r) ** q * np.abs(r) ** w, Q, r_lo, r_hi,
                    rtol=1e-6)
            extras["lhs_truncated_window"] = [r_lo, r_hi]
            extras["lhs_truncated"] = float((S.value * tv) ** (1.0 / q))
        except (DivergenceError, OverflowError):
            pass

    const = kap * A
    ratio_err = (lhs_err / rhs + abs(lhs) * rhs_err / rhs ** 2) \
        if (rhs and math.isfinite(lhs)) else 0.0
    const_err = const * abs(1.0 / q + 1.0 / pp) * (S.stderr / S.value)
    rep = VerificationReport(
        inequality=f"reverse_integral_hardy[{variant}]",
        params={"Q": Q, "p": p, "q": q, "p_prime": pp,
                "W_exponent": w, "U_exponent": u},
        lhs=lhs, rhs=rhs, analytic_constant=const,
        stderr=ratio_err + const_err,
        lhs_stderr=lhs_err, rhs_stderr=rhs_err,
        sphere_value=S.value, sphere_stderr=S.stderr,
        degenerate=degenerate, extras=extras,
    )
    return rep


# ---------------------------------------------------------------------------
# forward cross-checks
# ---------------------------------------------------------------------------

@_timed
def verify_forward_hardy(f: RadialProfile, p: float, group: HomogeneousGroup,
                         norm: QuasiNorm, spec: QuadratureSpec) -> VerificationReport:
    """||f/|x|||_p <= p/(Q-p) ||dF/dr||_p for 1 < p < Q."""
    Q = group.homogeneous_dim
    if not 1.0 < p < Q:
        raise ParameterError(f"forward Hardy needs 1 < p < Q, got p={p:g}",
                             module=_MODULE, operation="verify_forward_hardy")
    S = sphere_measure(group, norm, spec)
    il, el = weighted_p_integral(f, p, -p, Q)
    ir, er = weighted_p_integral(f, p, 0.0, Q, use_derivative=True)
    if ir == 0.0:
        raise DegenerateInputError("derivative side vanishes", module=_MODULE,
                                   operation="verify_forward_hardy")
    num = (il ** (1.0 / p), el / abs(il) * il ** (1.0 / p) / p if il else 0.0)
    den = (ir ** (1.0 / p), er / abs(ir) * ir ** (1.0 / p) / p)
    return _ratio_report("forward_hardy", {"Q": Q, "p": p}, num, den,
                         p / (Q - p), S, direction="upper")


@_timed
def verify_forward_sobolev(f: RadialProfile, p: float, group: HomogeneousGroup,
                           norm: QuasiNorm, spec: QuadratureSpec) -> VerificationReport:
    """||f||_p <= (p/Q) ||r dF/dr||_p for 1 < p < inf."""
    Q = group.homogeneous_dim
    if not p > 1.0:
        raise ParameterError(f"forward Sobolev needs p > 1, got p={p:g}",
                             module=_MODULE, operation="verify_forward_sobolev")
    S = sphere_measure(group, norm, spec)
    il, el = weighted_p_integral(f, p, 0.0, Q)
    ir, er = weighted_p_integral(f, p, p, Q, use_derivative=True)
    if ir == 0.0:
        raise DegenerateInputError("Euler side vanishes", module=_MODULE,
                                   operation="verify_forward_sobolev")
    num = (il ** (1.0 / p), el / abs(il) * il ** (1.0 / p) / p if il else 0.0)
    den = (ir ** (1.0 / p), er / abs(ir) * ir ** (1.0 / p) / p)
    return _ratio_report("forward_sobolev", {"Q": Q, "p": p}, num, den,
                         p / Q, S, direction="upper")


@_timed
def verify_forward_ckn(f: RadialProfile, p: float, alpha: float, beta: float,
                       group: HomogeneousGroup, norm: QuasiNorm,
                       spec: QuadratureSpec) -> VerificationReport:
    """(|Q-g|/p) ||f/|x|^{g/p}||_p^p <= ||F'/|x|^a||_p ||f/|x|^{b/(p-1)}||_p^{p-1},
    g = a + b + 1 != Q, for 1 < p < inf."""
    Q = group.homogeneous_dim
    if not p > 1.0:
        raise ParameterError(f"forward CKN needs p > 1, got p={p:g}",
                             module=_MODULE, operation="verify_forward_ckn")
    gamma = alpha + beta + 1.0
    if gamma >= Q:
        raise ParameterError(
            "gamma >= Q needs trial data vanishing near the origin; only "
            "gamma < Q is supported for the built-in families",
            module=_MODULE, operation="verify_forward_ckn")
    if Q <= alpha * p:
        raise ParameterError("requires Q > alpha p for profiles positive at "
                             "the origin", module=_MODULE,
                             operation="verify_forward_ckn")
    S = sphere_measure(group, norm, spec)
    il, el = weighted_p_integral(f, p, -gamma, Q)
    ia, ea = weighted_p_integral(f, p, -alpha * p, Q, use_derivative=True)
    ib, eb = weighted_p_integral(f, p, -beta * p / (p - 1.0), Q)
    if ia == 0.0 or ib == 0.0:
        raise DegenerateInputError("a right-hand factor vanishes",
                                   module=_MODULE, operation="verify_forward_ckn")
    den_v = ia ** (1.0 / p) * ib ** ((p - 1.0) / p)
    den_e = den_v * (ea / abs(ia) / p + eb / abs(ib) * abs(p - 1.0) / p)
    return _ratio_report(
        "forward_ckn",
        {"Q": Q, "p": p, "alpha": alpha, "beta": beta, "gamma": gamma},
        (il, el), (den_v, den_e), p / abs(Q - gamma), S, direction="upper")
