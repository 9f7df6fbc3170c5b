import pytest

from tmlab.construct import joint_spectrum_point


@pytest.fixture(scope="session")
def joint_point():
    """Shared two-target construction used across analysis tests."""
    return joint_spectrum_point(0.25, 0.5, 64, seed=424242)


@pytest.fixture(scope="session")
def joint_code(joint_point):
    """Block profile of the shared point with at least 3000 complete blocks."""
    n = 1 << 16
    while True:
        code, first = joint_point.prefix_code(n)
        if len(code) >= 3000:
            return code
        n *= 2
