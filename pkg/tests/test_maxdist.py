"""Branch-and-bound suprema against closed forms and dense sampling."""

import numpy as np
import pytest

from regionlab import box
from regionlab import maxdist, ops
from tests.conftest import random_convex


def test_sup_field_constant():
    # a flat landscape never certifies, but the value and error stay honest
    res = maxdist.sup_field(lambda pts: np.full(pts.shape[0], 3.5), (0, 0, 1, 1), tol=1e-3)
    assert res.value == pytest.approx(3.5, abs=1e-6)
    assert res.error <= 5e-3


def test_sup_field_quadratic_peak():
    def f(pts):
        return 1.0 - (pts[:, 0] - 0.3) ** 2 - (pts[:, 1] - 0.7) ** 2

    res = maxdist.sup_field(f, (0, 0, 1, 1), tol=1e-4)
    assert res.value == pytest.approx(1.0, abs=1e-3)
    assert res.argmax == pytest.approx([0.3, 0.7], abs=0.05)
    assert res.error <= 1e-3


def test_sup_boundary_to_region_shifted_boxes():
    p = box(0, 0, 1, 1)
    q = box(0.25, 0, 1.25, 1)
    res = maxdist.sup_boundary_to_region(p, q, tol=1e-4)
    assert res.value == pytest.approx(0.25, abs=1e-3)
    # argmax realizes the reported value
    d = q.distance(np.array([res.argmax]))[0]
    assert d == pytest.approx(res.value, abs=2 * res.error + 1e-6)


def test_sup_boundary_to_region_identical_boxes():
    p = box(0, 0, 1, 1)
    res = maxdist.sup_boundary_to_region(p, box(0, 0, 1, 1), tol=1e-4)
    assert res.value <= 1e-3


def test_sup_boundary_to_region_contained():
    # p inside q: every point of p has distance zero to the closure of q
    res = maxdist.sup_boundary_to_region(box(0.2, 0.2, 0.8, 0.8), box(0, 0, 1, 1), tol=1e-4)
    assert res.value <= 1e-3


def test_sup_depth_outside_attached_strip():
    # the sup runs over the closure of the complement of p, so the shared
    # edge x = 1 is admissible and reaches depth 0.1 inside the wider box
    p = box(0, 0, 1, 1)
    q = box(0, 0, 1.1, 1)
    res = maxdist.sup_depth_outside(p, q, tol=1e-4)
    assert res.value == pytest.approx(0.1, abs=2e-3)


def test_sup_depth_outside_detached_strip():
    # a strip detached from p is deepest at its own midline
    p = box(0, 0, 1, 1)
    q = box(2, 0, 2.1, 1)
    res = maxdist.sup_depth_outside(p, q, tol=1e-4)
    assert res.value == pytest.approx(0.05, abs=2e-3)


def test_sup_depth_outside_contained():
    res = maxdist.sup_depth_outside(box(0, 0, 1.5, 1.5), box(0.2, 0.2, 0.8, 0.8), tol=1e-4)
    assert res.value <= 1e-3


def test_error_bound_respected_when_converged():
    res = maxdist.sup_boundary_to_region(box(0, 0, 1, 1), box(0.4, 0.1, 1.6, 0.9), tol=1e-3)
    assert res.converged
    assert res.error <= 1e-3 + 1e-12


def test_matches_dense_boundary_sampling(rng):
    for _ in range(8):
        p = random_convex(rng)
        q = random_convex(rng)
        tol = 1e-3 * max(p.diameter, q.diameter)
        res = maxdist.sup_boundary_to_region(p, q, tol=tol)
        step = min(p.diameter, q.diameter) / 2000
        dense = q.distance(ops.boundary_sample(p, step)).max()
        # dense sampling is a lower bound up to one step of boundary spacing
        assert dense <= res.value + res.error + 1e-9
        assert res.value <= dense + res.error + step + 1e-9
