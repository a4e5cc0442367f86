import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from rclift import TaylorFn, build_omega, ds3

settings.register_profile(
    "rclift",
    max_examples=30,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("rclift")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def ds3_omega():
    return build_omega(ds3())


@pytest.fixture
def ds3_param():
    """Constant parameter (1, 0)^T that produces the pair F = [0, 1], G = N."""
    return TaylorFn.constant(np.array([[1.0], [0.0]]))


N2 = np.array([[0.0, 0.0], [1.0, 0.0]])


def random_psd(rng, n):
    b = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return b.conj().T @ b


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
