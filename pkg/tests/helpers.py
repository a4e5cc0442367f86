import numpy as np

from rclift.analytic import TaylorFn, random_schur
from rclift.dataset import build_omega, random_dataset, random_dims
from rclift.lifting import GammaOp, gamma_from_pair
from rclift.opcore import random_isometry
from rclift.schurpair import pair_from_parameter


def random_solution(seed, N=32, preset="generic", param_degree=2, max_dim=6):
    """Data set, omega data, parameter, pair and solution from one seed."""
    rng = np.random.default_rng(seed)
    ds = random_dataset(seed, random_dims(rng, max_dim, preset), preset)
    od = build_omega(ds)
    H = random_schur(rng, *od.restriction.param_shape, degree=param_degree)
    p = pair_from_parameter(od, H)
    return ds, od, H, p, gamma_from_pair(p, N)


def random_contraction_symbol(rng, out_dim, in_dim, degree, mass=0.8):
    """Symbol whose Gram matrix sum Theta_n* Theta_n is at most mass**2."""
    return GammaOp(random_schur(rng, out_dim, in_dim, degree, scale=mass))


def random_isometric_symbol(rng, out_dim, in_dim, degree):
    """Symbol with sum Theta_n* Theta_n = I exactly (degree is raised if needed)."""
    degree = max(degree, -(-in_dim // out_dim) - 1)
    v = random_isometry(rng, (degree + 1) * out_dim, in_dim)
    return GammaOp(TaylorFn(v.reshape(degree + 1, out_dim, in_dim)))
