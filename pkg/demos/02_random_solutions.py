"""Random data sets: every Schur-class parameter produces a solution."""

import numpy as np

from rclift import (
    build_omega,
    gamma_from_pair,
    pair_from_parameter,
    random_dataset,
    random_dims,
    random_schur,
    validate,
    verify_solution,
)

rng = np.random.default_rng(1)
print(f"{'preset':>15} {'dims':>10} {'dim F':>6} {'dim G':>6} {'margin':>8} {'residual':>9}")
for preset in ("generic", "exact_equality", "treil_volberg", "classical"):
    for seed in range(3):
        dims = random_dims(rng, 5, preset)
        ds = random_dataset(seed, dims, preset)
        assert validate(ds).passed
        od = build_omega(ds)
        H = random_schur(rng, *od.restriction.param_shape, degree=2)
        g = gamma_from_pair(pair_from_parameter(od, H), 32)
        rep = verify_solution(od, g)
        print(
            f"{preset:>15} {str(dims):>10} {od.F_basis.dim:>6} {od.G_basis.dim:>6}"
            f" {rep.contraction_margin:>8.3f} {rep.max_residual:>9.1e}"
        )
