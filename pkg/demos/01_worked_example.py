"""A small data set with many solutions, worked end to end.

H0 = C, H = C^2, H' = C, A = 0, T' = 0, Q = e1, R = e2.  The defect of A is
the identity, so everything happens in plain coordinates.
"""

import numpy as np

from rclift import (
    GammaOp,
    TaylorFn,
    build_big_omega,
    build_omega,
    ds3,
    gamma_from_pair,
    j_gamma,
    pair_from_parameter,
    verify_pair,
    verify_solution,
)

np.set_printoptions(precision=3, suppress=True)

ds = ds3()
od = build_omega(ds)
print("omega (maps F into D_T' + D_A):")
print(od.omega.real)
print("F =", od.F_basis.vectors.real.ravel(), " G =", od.G_basis.vectors.real.ravel())

# The free parameter maps G into the range of D_{omega*}, here 2-dimensional.
H = TaylorFn.constant([[1.0], [0.0]])
p = pair_from_parameter(od, H)
print("\nSchur pair from H = (1, 0):")
print("  F0 =", p.F.coeffs[0].real, "\n  G0 =\n", p.G.coeffs[0].real)
print("  pair check:", verify_pair(p).to_dict())

g = gamma_from_pair(p, 8)
print("\nsymbol coefficients Theta_0 .. Theta_2:")
for n in range(3):
    print(f"  Theta_{n} =", g.theta.coeffs[n].real)
rep = verify_solution(ds, g)
print("contraction margin", rep.contraction_margin, " max residual", rep.max_residual)

# Gamma is an isometry here, so there is no room left: the map back to
# pairs has an empty parameter and returns the pair we started from.
q = j_gamma(g)
print("\nback to the pair, difference:", q.F.distance(p.F), q.G.distance(p.G))

# Zero is also a solution; its Omega is the swap e1 -> e2.
zero = GammaOp(TaylorFn.zeros(1, 2, 8))
print("\nzero solution passes:", verify_solution(ds, zero).passed)
bo = build_big_omega(ds, zero)
print("Omega for the zero solution:", bo.Omega.real.ravel(), " isometric:", bo.isometric)
