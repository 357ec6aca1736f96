#!/usr/bin/env python3
"""Integration over homogeneous groups and the quasi-sphere measure |S|.

Everything radial reduces to |S| * int g(r) r^{Q-1} dr.  |S| itself is
recovered two independent ways: from the Monte Carlo identity
|S| = (int e^{-|x|} dx) / Gamma(Q), and from the exact direction integral
int_{S^{N-1}} (sum_i v_i u_i^2) |u|^{-Q} dS(u).  For the Koranyi gauge on
the Heisenberg group the latter evaluates to 2 pi^2.
"""

import math

import numpy as np
from scipy import special as sp

from revineq import (DecayEnvelope, QuadratureSpec, abelian_group,
                     euclidean_norm, heisenberg_group, integrate_cartesian,
                     integrate_radial, koranyi_norm, polar_consistency_check,
                     sphere_measure, sphere_measure_direct)

plane = abelian_group((1.0, 1.0), name="abelian2")
h1 = heisenberg_group()
ne, nk = euclidean_norm(plane), koranyi_norm(h1)
spec = QuadratureSpec(sample_count=200000, seed=0)

# --- radial rule against Gamma integrals --------------------------------------
print("radial rule vs Gamma(Q) = int e^{-r} r^{Q-1} dr:")
for Q in (1, 2, 4, 6):
    val = integrate_radial(lambda r: np.exp(-r), float(Q))
    print(f"  Q={Q}: {val:.12f}   rel err {abs(val - sp.gamma(Q)) / sp.gamma(Q):.1e}")

# --- cartesian Monte Carlo against closed forms --------------------------------
res = integrate_cartesian(plane, lambda x: np.exp(-np.pi * np.sum(x**2, -1)),
                          spec, DecayEnvelope("gauss", scale=np.pi))
print(f"\nint_R2 e^(-pi|x|^2) dx = {res.value:.6f} +- {res.stderr:.1e}  (exact 1)")

# --- quasi-sphere measures ------------------------------------------------------
print("\nquasi-sphere measures:")
for group, norm, closed in ((plane, ne, 2 * math.pi), (h1, nk, 2 * math.pi**2)):
    mc = sphere_measure(group, norm, spec)
    direct = sphere_measure_direct(group, norm)
    print(f"  {group.name}/{norm.name}: MC {mc.value:.6f} +- {mc.stderr:.1e}, "
          f"direct {direct:.12f}, closed form {closed:.12f}")

# --- polar factorization consistency -------------------------------------------
print("\npolar factorization (cartesian vs |S| x radial):")
for group, norm in ((plane, ne), (h1, nk)):
    rep = polar_consistency_check(group, norm, lambda r: np.exp(-r * r),
                                  DecayEnvelope("gauss"), spec)
    print(f"  {group.name}: cart {rep.cartesian.value:.6f}, "
          f"factorized {rep.factorized:.6f}, "
          f"discrepancy {rep.discrepancy:.2e} (consistent: {rep.consistent})")
