"""Positive real majorants of Theta* Theta, and the Poisson picture for scalars."""

import numpy as np

from rclift import (
    GammaOp,
    TaylorFn,
    cayley,
    factor_delta,
    majorant_gap,
    poisson_cross_check,
    positive_real_margin,
    random_schur,
    v_from_theta,
    w_from_contraction_parameter,
)
from rclift.lifting import defect_map

rng = np.random.default_rng(4)
g = GammaOp(random_schur(rng, 2, 3, 4, scale=0.8))
V = v_from_theta(g.theta, 16)
print("least majorant V: gap", f"{majorant_gap(g.theta, V):.2e}",
      " positive real margin", f"{positive_real_margin(V, 16):.2e}")

k = defect_map(g)[1].dim
C = random_schur(rng, k, k, 2, scale=0.5)
W = w_from_contraction_parameter(g, C, 200)
print("another majorant W: gap", f"{majorant_gap(g.theta, W):.2e}",
      " W - V positive real margin", f"{positive_real_margin(W - V, 16):.2e}")
K = factor_delta(g, W)
print("recovered Cayley factor, error", f"{K.distance(cayley(C, 200)):.1e}")

print("\nscalar check: V(z) against a quadrature of |theta|^2 on the circle")
for coeffs in ([0, 1], [0.5, 0.5], [0.3, 0, 0.4]):
    th = TaylorFn.scalar(coeffs)
    v, q = poisson_cross_check(th, 0.6 + 0.3j)
    print(f"  theta = {coeffs}: V = {v:.6f}, quadrature = {q:.6f}")
