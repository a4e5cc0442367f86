"""Numerical defaults shared by every module and the command line."""

DEFAULT_DEGREE = 32
DEFAULT_TOL = 1e-9
# Omega-level checks absorb the truncation bias of the computed defect of Gamma.
OMEGA_TOL_FACTOR = 10.0
DEFAULT_SAMPLES = 64
DEFAULT_SECTIONS = 16
MAX_SECTIONS = 48

CLAMP_TOL = 1e-10
RANK_TOL = 1e-10
RANK_FLOOR = 1e-12
HERMITIAN_TOL = 1e-10

BOUNDARY_RADIUS = 0.999
MAJORANT_RADII = (0.3, 0.6, 0.9, 0.99)
POISSON_NODES = 4096

MAX_RETRIES = 64
