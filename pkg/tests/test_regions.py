"""Region types: construction, measure, queries, JSON round trips."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regionlab import (
    BadParams,
    ConvexPolygon,
    PolarRegion,
    RadialPolygon,
    RasterRegion,
    TwoComponent,
    box,
    disc,
    region_from_json,
    region_to_json,
    regular_polygon,
)
from regionlab import ops


def test_box_measures():
    b = box(0, 0, 2, 1)
    assert b.area == pytest.approx(2.0)
    assert b.perimeter == pytest.approx(6.0)
    assert b.diameter == pytest.approx(math.sqrt(5))
    assert b.bbox() == pytest.approx((0.0, 0.0, 2.0, 1.0))


def test_vertices_normalized_ccw():
    cw = ConvexPolygon([[0, 1], [1, 1], [1, 0], [0, 0]])
    assert cw.vertices.tolist() == [[0, 0], [1, 0], [1, 1], [0, 1]]


def test_collinear_vertices_dropped():
    p = ConvexPolygon([[0, 0], [0.5, 0], [1, 0], [1, 1], [0, 1]])
    assert len(p.vertices) == 4


@pytest.mark.parametrize(
    "verts",
    [
        [[0, 0], [1, 0]],
        [[0, 0], [1, 0], [2, 0]],
        [[0, 0], [0, 0], [0, 0], [0, 0]],
    ],
)
def test_degenerate_polygon_rejected(verts):
    with pytest.raises(BadParams):
        ConvexPolygon(verts)


def test_box_point_queries():
    b = box(0, 0, 1, 1)
    pts = np.array([[0.5, 0.5], [2.0, 0.5], [0.5, -0.3]])
    assert b.contains(pts).tolist() == [True, False, False]
    assert b.depth(pts)[0] == pytest.approx(0.5)
    assert b.distance(pts)[1] == pytest.approx(1.0)
    assert b.distance(pts)[2] == pytest.approx(0.3)
    # corner distance is diagonal
    assert b.distance(np.array([[2.0, 2.0]]))[0] == pytest.approx(math.sqrt(2))


def test_square_ray_radii():
    b = box(-1, -1, 1, 1)
    r = b.ray_radii((0.0, 0.0), np.array([0.0, math.pi / 4, math.pi / 2]))
    assert r == pytest.approx([1.0, math.sqrt(2), 1.0])


def test_regular_polygon_approaches_disc():
    p = regular_polygon((0, 0), 1.0, 256)
    assert p.area == pytest.approx(math.pi, rel=1e-3)
    assert p.perimeter == pytest.approx(2 * math.pi, rel=1e-3)


def test_two_component_separation_and_queries():
    tc = TwoComponent(box(0, 0, 1, 1), box(2, 0, 3, 1))
    assert tc.separation == pytest.approx(1.0)
    pts = np.array([[0.5, 0.5], [2.5, 0.5], [1.5, 0.5]])
    assert tc.contains(pts).tolist() == [True, True, False]
    assert tc.distance(pts)[2] == pytest.approx(0.5)
    assert tc.area == pytest.approx(2.0)
    assert len(tc.components()) == 2


def test_two_component_rejects_touching_parts():
    with pytest.raises(BadParams):
        TwoComponent(box(0, 0, 1, 1), box(0.5, 0, 1.5, 1))


def test_disc_measures():
    d = disc(2.0)
    assert d.area == pytest.approx(4 * math.pi)
    assert d.perimeter == pytest.approx(4 * math.pi)
    assert d.diameter == pytest.approx(4.0)


def test_polar_wedge_area_and_wrap():
    # wedge straddles theta = 0, so it is stored wrap-split
    pr = PolarRegion(1.0, [(-0.1, 0.1, 1.0, 2.0)])
    assert pr.area == pytest.approx(math.pi + 0.1 * (4 - 1))
    pts = np.array([[1.5, 0.0], [-1.5, 0.0], [1.5 * math.cos(0.05), 1.5 * math.sin(0.05)]])
    assert pr.contains(pts).tolist() == [True, False, True]


def test_polar_ray_radii_inside_and_outside_wedge():
    pr = PolarRegion(1.0, [(-0.1, 0.1, 1.0, 2.0)])
    r = pr.ray_radii((0.0, 0.0), np.array([0.0, 0.05, 0.2, math.pi]))
    assert r == pytest.approx([2.0, 2.0, 1.0, 1.0])


def test_detached_wedge_is_not_star_shaped():
    pr = PolarRegion(1.0, [(0.0, 0.5, 1.2, 2.0)])
    assert not pr.is_star_shaped()
    with pytest.raises(BadParams):
        pr.ray_radii((0.0, 0.0), np.array([0.25]))


def test_polar_distance_from_outside():
    pr = disc(1.0)
    assert pr.distance(np.array([[3.0, 0.0]]))[0] == pytest.approx(2.0, abs=1e-3)
    assert pr.depth(np.array([[0.0, 0.0]]))[0] == pytest.approx(1.0, abs=1e-3)


def test_raster_roundtrip_and_measures():
    ra = ops.rasterize(box(0, 0, 1, 1), cells=64)
    doc = region_to_json(ra)
    assert doc["type"] == "raster"
    assert all(set(row) <= {"0", "1"} for row in doc["rows"])
    back = region_from_json(doc)
    assert isinstance(back, RasterRegion)
    assert back.area == pytest.approx(ra.area)
    assert back.cell_size == pytest.approx(ra.cell_size)
    # cell count times cell area
    filled = sum(row.count("1") for row in doc["rows"])
    assert ra.area == pytest.approx(filled * ra.cell_size**2)


def test_raster_queries_match_box():
    ra = ops.rasterize(box(0, 0, 1, 1), cells=128)
    err = ra.query_error
    assert ra.contains(np.array([[0.5, 0.5]]))[0]
    assert ra.depth(np.array([[0.5, 0.5]]))[0] == pytest.approx(0.5, abs=3 * err)
    assert ra.distance(np.array([[2.0, 0.5]]))[0] == pytest.approx(1.0, abs=3 * err)


def test_radial_polygon_disc():
    th = np.linspace(0, 2 * math.pi, 512, endpoint=False)
    rp = RadialPolygon((0.0, 0.0), th, np.full(512, 1.0))
    assert rp.area == pytest.approx(math.pi, rel=1e-3)
    assert rp.contains(np.array([[0.0, 0.0], [0.9, 0.0]])).tolist() == [True, True]
    assert not rp.contains(np.array([[1.1, 0.0]]))[0]


def test_radial_polygon_accepts_nonuniform_grid():
    th = np.array([0.0, 0.3, 0.5, 1.0, 2.0, 3.0, 4.0, 5.5])
    rp = RadialPolygon((0.0, 0.0), th, np.full(8, 1.0))
    assert rp.area > 0


def test_radial_polygon_rejects_unsorted_grid():
    th = np.array([0.0, 1.0, 0.5, 2.0, 2.5, 3.0, 4.0, 5.0])
    with pytest.raises(BadParams):
        RadialPolygon((0.0, 0.0), th, np.full(8, 1.0))


@pytest.mark.parametrize(
    "r",
    [
        box(0, 0, 1, 2),
        TwoComponent(box(0, 0, 1, 1), box(3, 3, 4, 4)),
        PolarRegion(1.0, [(0.2, 0.6, 1.0, 1.5)]),
    ],
)
def test_json_roundtrip_preserves_geometry(r):
    back = region_from_json(region_to_json(r))
    assert type(back) is type(r)
    assert back.area == pytest.approx(r.area)
    assert back.bbox() == pytest.approx(r.bbox())


def test_unknown_region_type_rejected():
    with pytest.raises(BadParams):
        region_from_json({"type": "blob", "vertices": [[0, 0], [1, 0], [0, 1]]})


@st.composite
def point_clouds(draw):
    n = draw(st.integers(min_value=3, max_value=20))
    coords = draw(
        st.lists(
            st.tuples(
                st.floats(-10, 10, allow_nan=False),
                st.floats(-10, 10, allow_nan=False),
            ),
            min_size=n,
            max_size=n,
        )
    )
    return np.asarray(coords)


@settings(max_examples=40, deadline=None)
@given(point_clouds())
def test_hull_contains_generators(pts):
    try:
        hull = ops.hull_of_points(pts)
    except BadParams:
        return  # degenerate cloud, nothing to check
    assert hull.contains(pts).all()
    assert hull.area >= 0
    # shoelace sign confirms the stored orientation
    v = hull.vertices
    x, y = v[:, 0], v[:, 1]
    shoelace = np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)
    assert shoelace > 0


@settings(max_examples=25, deadline=None)
@given(point_clouds())
def test_hull_is_idempotent(pts):
    try:
        hull = ops.hull_of_points(pts)
    except BadParams:
        return
    again = ops.hull_of_points(hull.vertices)
    assert again.vertices == pytest.approx(hull.vertices)
