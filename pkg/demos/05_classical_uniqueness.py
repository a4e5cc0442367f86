"""Uniqueness verdicts across presets."""

import numpy as np

from rclift import (
    TaylorFn,
    build_omega,
    ds1,
    ds3,
    gamma_from_pair,
    pair_from_parameter,
    random_dataset,
    random_dims,
    uniqueness_check,
)

rng = np.random.default_rng(5)
for seed in range(4):
    ds = random_dataset(seed, random_dims(rng, 5, "classical"), "classical")
    od = build_omega(ds)
    print(f"classical seed {seed}: dim F = {od.F_basis.dim} of {od.dA}, verdict {uniqueness_check(ds, od).value}")

print("scalar A = T' = 0, R = Q = 1:", uniqueness_check(ds1()).value)

ds = ds3()
od = build_omega(ds)
print("worked example:", uniqueness_check(ds, od).value)
a = gamma_from_pair(pair_from_parameter(od, TaylorFn.zeros(2, 1)), 4).theta
b = gamma_from_pair(pair_from_parameter(od, TaylorFn.constant([[1.0], [0.0]])), 4).theta
print("  two solutions differ by", a.distance(b))
print("generic data:", uniqueness_check(random_dataset(0, (2, 4, 3))).value)
