"""Shared cones and seeded generators for the test suite."""

import numpy as np
import pytest

from engine import build_cone


@pytest.fixture
def orthant2():
    """Nonnegative orthant in R^2."""
    return build_cone(np.eye(2))


@pytest.fixture
def skew_cone():
    """cone{(1,0), (1,1)}; polar generators (-1,1) and (0,-1)."""
    return build_cone(np.array([[1.0, 1.0], [0.0, 1.0]]))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_instance(rng, n):
    """Gaussian cone and point of dimension n."""
    return build_cone(rng.standard_normal((n, n))), rng.standard_normal(n)
