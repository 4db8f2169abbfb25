"""Distance families on plane regions: closed forms and axioms."""

import math

import numpy as np
import pytest

from regionlab import BadParams, NoOverlap, PreconditionViolated, TwoComponent, box, disc
from regionlab import metrics, ops
from tests.conftest import random_convex

SHIFT = box(0.25, 0, 1.25, 1)
UNIT = box(0, 0, 1, 1)


def fig1_pair(i=10):
    q = TwoComponent(box(0, 0, 1, 1), box(2, 0, 2 + 1 / i, 1))
    return q, UNIT


def test_h1_shifted_squares():
    assert metrics.h1(UNIT, SHIFT).value == pytest.approx(0.25, abs=2e-3)


def test_h1_is_one_sided():
    # inner square reaches the big square at distance zero, not conversely
    inner, outer = box(0.3, 0.3, 0.7, 0.7), box(0, 0, 1, 1)
    assert metrics.h1(inner, outer).value == pytest.approx(0.0, abs=2e-3)
    assert metrics.h1(outer, inner).value == pytest.approx(0.3 * math.sqrt(2), abs=2e-3)


def test_hausdorff_shifted_squares():
    mv = metrics.hausdorff(UNIT, SHIFT)
    assert mv.value == pytest.approx(0.25, abs=2e-3)
    assert mv.error < 2e-3


def test_hausdorff_detached_strip():
    q, p = fig1_pair(10)
    assert metrics.hausdorff(q, p).value == pytest.approx(1.1, abs=5e-3)


def test_dual_hausdorff_sees_complement_pocket():
    # the detached strip is 1.1 away in the ordinary sense as well
    q, p = fig1_pair(10)
    assert metrics.dual_hausdorff(q, p).value == pytest.approx(1.1, abs=5e-3)


def test_dual_hausdorff_dominates_hausdorff(rng):
    for _ in range(6):
        p, q = random_convex(rng), random_convex(rng)
        h = metrics.hausdorff(p, q)
        hd = metrics.dual_hausdorff(p, q)
        assert hd.value >= h.value - h.error - hd.error


def test_sym_diff_area_exact_for_convex():
    mv = metrics.sym_diff_area(UNIT, box(0.5, 0, 1.5, 1))
    assert mv.value == pytest.approx(1.0, abs=mv.error + 5e-3)


def test_sym_diff_area_detached_strip():
    q, p = fig1_pair(10)
    mv = metrics.sym_diff_area(q, p)
    assert mv.value == pytest.approx(0.1, abs=mv.error + 5e-3)


def test_wasserstein_self_distance_sits_at_floor():
    f = metrics.metric_by_name("W1").generator
    mv = metrics.wasserstein(UNIT, UNIT, f, n=512, seed=0)
    assert mv.value <= 3 * mv.detail["floor"]
    assert mv.error >= mv.detail["floor"]


def test_wasserstein_translation_distance():
    f = metrics.metric_by_name("W1").generator
    far = box(2, 0, 3, 1)
    mv = metrics.wasserstein(UNIT, far, f, n=1024, seed=0)
    assert mv.value == pytest.approx(2.0, abs=3 * mv.error + 0.02)


def test_wasserstein_error_grows_with_fewer_samples():
    f = metrics.metric_by_name("W1").generator
    lo = metrics.wasserstein(UNIT, UNIT, f, n=128, seed=0)
    hi = metrics.wasserstein(UNIT, UNIT, f, n=1024, seed=0)
    assert hi.detail["floor"] < lo.detail["floor"]


def test_wasserstein_floor_positive_and_deterministic():
    f = metrics.metric_by_name("W2").generator
    a = metrics.wasserstein_floor(UNIT, f, n=256, seed=3)
    b = metrics.wasserstein_floor(UNIT, f, n=256, seed=3)
    assert a == b > 0


def test_homeo_upper_bound_concentric_discs():
    mv = metrics.homeo_upper_bound(disc(1.0), disc(2.0))
    assert mv.value == pytest.approx(1.0, abs=1e-6)


def test_homeo_upper_bound_component_mismatch_is_infinite():
    q, p = fig1_pair(10)
    assert metrics.homeo_upper_bound(q, p).value == math.inf


def test_homeo_upper_bound_disjoint_raises():
    with pytest.raises(NoOverlap):
        metrics.homeo_upper_bound(UNIT, box(3, 3, 4, 4))


def test_perimeter_augmented_combines_terms():
    wide = box(0, 0, 2, 1)
    pm = metrics.perimeter_augmented(UNIT, wide)
    hd = metrics.dual_hausdorff(UNIT, wide)
    assert pm.value == pytest.approx(hd.value + 2.0, abs=hd.error + pm.error + 1e-6)


def test_perimeter_augmented_rejects_raster():
    ra = ops.rasterize(UNIT, cells=64)
    with pytest.raises(PreconditionViolated):
        metrics.perimeter_augmented(ra, UNIT)


def test_metric_by_name_labels():
    for token, kind in (("H1", "h1"), ("H", "H"), ("Hd", "Hd"), ("V", "V"), ("M", "M"), ("PM", "PM")):
        spec = metrics.metric_by_name(token)
        assert spec.name == token
    assert metrics.metric_by_name("W1").generator.power == 1
    assert metrics.metric_by_name("Wp:3").generator.power == 3
    with pytest.raises(BadParams):
        metrics.metric_by_name("nope")


def test_metric_spec_evaluate_matches_direct_call():
    spec = metrics.metric_by_name("H")
    mv = spec.evaluate(UNIT, SHIFT)
    assert mv.value == pytest.approx(metrics.hausdorff(UNIT, SHIFT).value, abs=1e-6)


@pytest.mark.parametrize("name", ["H", "Hd", "V"])
def test_metric_axioms_small_sample(name, rng):
    spec = metrics.metric_by_name(name)
    for _ in range(12):
        p, q, r = (random_convex(rng) for _ in range(3))
        dpq = spec.evaluate(p, q)
        dqp = spec.evaluate(q, p)
        dpr = spec.evaluate(p, r)
        dqr = spec.evaluate(q, r)
        slack = 2 * (dpq.error + dqp.error + dpr.error + dqr.error)
        assert abs(dpq.value - dqp.value) <= slack + 1e-9
        assert dpr.value <= dpq.value + dqr.value + slack + 1e-9
        same = spec.evaluate(p, p)
        assert same.value <= 2 * same.error + 1e-9
