import numpy as np
import pytest

from regionlab import ops


def random_convex(rng, scale=1.0, center=(0.0, 0.0)):
    n = int(rng.integers(6, 14))
    pts = np.asarray(center) + scale * rng.normal(size=(2 * n, 2)) * 0.5
    return ops.hull_of_points(pts)


def perturbed_convex(p, amplitude, rng):
    jitter = rng.normal(size=p.vertices.shape) * amplitude
    shift = rng.normal(size=2) * amplitude
    return ops.hull_of_points(p.vertices + jitter + shift[None, :])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
