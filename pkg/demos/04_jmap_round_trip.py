"""From a solution back to all Schur pairs that produce it."""

import numpy as np

from rclift import (
    build_big_omega,
    build_omega,
    constrained_from_pair,
    gamma_from_pair,
    j_gamma,
    pair_from_parameter,
    parameter_from_pair,
    parameter_to_constrained,
    random_schur,
    s_omega_margin,
    settled_gamma,
)
from rclift.serialize import load_corpus

rng = np.random.default_rng(2)
ds = load_corpus("generic_seed7")
od = build_omega(ds)
H = random_schur(rng, *od.restriction.param_shape, degree=2)
p = pair_from_parameter(od, H)
g = settled_gamma(p, 32, 1e-20)
print("working degree", g.degree)
bo = build_big_omega(od, g)
print("Omega data:", bo.summary())

# Several constrained parameters, each giving a different pair with the same symbol.
for trial in range(3):
    C1 = random_schur(rng, *bo.restriction.param_shape, degree=1, scale=0.6)
    C = parameter_to_constrained(bo, C1)
    q = j_gamma(g, C, big_omega=bo)
    back = gamma_from_pair(q, g.degree)
    print(f"C #{trial}: membership {s_omega_margin(C, bo).passed},"
          f" symbol error {back.theta.distance(g.theta, g.degree - 4):.1e},"
          f" G differs from original by {q.G.distance(p.G):.3f}")

# The original pair corresponds to one particular C.
C = constrained_from_pair(g, p)
q = j_gamma(g, C, big_omega=bo)
print("original pair recovered:", f"{q.stacked.distance(p.stacked, g.degree - 4):.1e}")
print("original parameter recovered:", f"{parameter_from_pair(q, 1e-8, omega=od).distance(H, g.degree - 4):.1e}")
