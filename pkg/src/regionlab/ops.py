"""Free-function operations over regions: measures, morphology, booleans, sampling.

Exact paths are used where the type combination allows them (convex clipping,
plain discs, half-plane erosion); everything else falls back to a common
raster grid with an explicit refinement check.
"""

from __future__ import annotations

import numpy as np

from .errors import (BadParams, CenterOutside, ErodedToEmpty, NoOverlap,
                     ResolutionTooCoarse)
from .regions import (ConvexPolygon, PolarRegion, RadialPolygon, RasterRegion,
                      TwoComponent, as_points, convex_pair_distance, _unit)

DEFAULT_CELLS = 1024
# chord tolerance for sampling dilation arcs, relative to the offset
ARC_CHORD_REL = 1e-4


# ---- measures ---------------------------------------------------------------

def area(r) -> float:
    return r.area


def perimeter(r) -> float:
    return r.perimeter


def diameter(r) -> float:
    return r.diameter


def bounding_box(r):
    return r.bbox()


def radius(r):
    """Largest inscribed ball: returns (center, rho).

    Exact for convex polygons (Chebyshev center by linear programming) and
    unions of them.  For a PolarRegion the ball is centered at the origin
    (radius r_base), which is exact for plain discs and a lower bound when
    wedges are present.  Rasters use the interior distance transform.
    """
    if isinstance(r, ConvexPolygon):
        return chebyshev_center(r)
    if isinstance(r, TwoComponent):
        c1, r1 = chebyshev_center(r.first)
        c2, r2 = chebyshev_center(r.second)
        return (c1, r1) if r1 >= r2 else (c2, r2)
    if isinstance(r, PolarRegion):
        return np.zeros(2), r.r_base
    if isinstance(r, RasterRegion):
        from scipy.ndimage import distance_transform_edt
        edt = distance_transform_edt(r.grid) * r.cell_size
        i, j = np.unravel_index(np.argmax(edt), edt.shape)
        cx = r.origin[0] + (j + 0.5) * r.cell_size
        cy = r.origin[1] + (i + 0.5) * r.cell_size
        return np.array([cx, cy]), float(edt[i, j])
    raise BadParams(f"radius not supported for {type(r).__name__}")


def chebyshev_center(p: ConvexPolygon):
    """Chebyshev center and inradius of a convex polygon via an LP."""
    from scipy.optimize import linprog
    # maximize rho s.t. n_in . x - rho >= off  for every edge
    n = p._nin
    a_ub = np.hstack([-n, np.ones((n.shape[0], 1))])
    b_ub = -p._off
    res = linprog(c=[0.0, 0.0, -1.0], A_ub=a_ub, b_ub=b_ub,
                  bounds=[(None, None), (None, None), (0.0, None)], method="highs")
    if not res.success:
        raise BadParams("Chebyshev LP failed")
    return res.x[:2].copy(), float(res.x[2])


def radius_at(r, center) -> float:
    """Radius of the largest ball about a given interior point."""
    c = as_points(center)
    d = float(r.depth(c)[0])
    if d <= 0.0 and not bool(r.contains(c)[0]):
        raise CenterOutside("center is not inside the region")
    return d


# ---- point and region distances ---------------------------------------------

def point_region_distance(x, r) -> float:
    return float(r.distance(as_points(x))[0])


def region_distance(a, b) -> float:
    """Distance between closures; exact for convex parts, sampled otherwise."""
    parts_a = a.components()
    parts_b = b.components()
    if all(isinstance(p, ConvexPolygon) for p in parts_a + parts_b):
        return min(convex_pair_distance(p, q) for p in parts_a for q in parts_b)
    step = max(a.diameter, b.diameter, 1e-9) / 512.0
    pa = a.boundary_points(step)
    if b.contains(pa).any() or a.contains(b.boundary_points(step)).any():
        return 0.0
    return float(b.distance(pa).min())


# ---- morphology --------------------------------------------------------------

def dilate(r, delta: float):
    """Minkowski sum with a closed disc of radius delta."""
    if delta < 0:
        raise BadParams("dilation radius must be nonnegative")
    if delta == 0:
        return r
    if isinstance(r, ConvexPolygon):
        return _dilate_convex(r, delta)
    if isinstance(r, PolarRegion) and not r.segments:
        return PolarRegion(r.r_base + delta)
    if isinstance(r, TwoComponent):
        d1 = _dilate_convex(r.first, delta)
        d2 = _dilate_convex(r.second, delta)
        if convex_pair_distance(d1, d2) > 0:
            return TwoComponent(d1, d2)
        return union(d1, d2)
    if isinstance(r, RasterRegion):
        return _raster_morph(r, delta, grow=True)
    return _raster_morph(rasterize(r, DEFAULT_CELLS, pad=delta), delta, grow=True)


def _dilate_convex(p: ConvexPolygon, delta: float) -> ConvexPolygon:
    """Offset polygon with vertex arcs sampled to a relative chord tolerance."""
    v = p.vertices
    n = v.shape[0]
    nin = p._nin
    max_chord = max(ARC_CHORD_REL * delta, 1e-12)
    dphi = 2.0 * np.arccos(max(0.0, 1.0 - max_chord / max(delta, 1e-300)))
    dphi = max(dphi, 1e-3)
    out = []
    for i in range(n):
        n_prev = -nin[i - 1]
        n_next = -nin[i]
        a0 = np.arctan2(n_prev[1], n_prev[0])
        a1 = np.arctan2(n_next[1], n_next[0])
        sweep = (a1 - a0) % (2.0 * np.pi)
        k = max(2, int(np.ceil(sweep / dphi)) + 1)
        th = a0 + sweep * np.arange(k) / (k - 1)
        out.append(v[i][None, :] + delta * _unit(th))
    return ConvexPolygon(np.vstack(out))


def erode(r, delta: float):
    """Points of r at depth more than delta; raises ErodedToEmpty when none remain."""
    if delta < 0:
        raise BadParams("erosion radius must be nonnegative")
    if delta == 0:
        return r
    if isinstance(r, ConvexPolygon):
        return _erode_convex(r, delta)
    if isinstance(r, PolarRegion) and not r.segments:
        if delta >= r.r_base:
            raise ErodedToEmpty("erosion radius reaches the disc radius")
        return PolarRegion(r.r_base - delta)
    if isinstance(r, TwoComponent):
        return TwoComponent(_erode_convex(r.first, delta), _erode_convex(r.second, delta))
    if isinstance(r, RasterRegion):
        return _raster_morph(r, delta, grow=False)
    return _raster_morph(rasterize(r, DEFAULT_CELLS), delta, grow=False)


def _halfplane_clip(poly_pts, nx, ny, off):
    """Clip a vertex list to the side nx*x + ny*y >= off."""
    out = []
    m = len(poly_pts)
    for j in range(m):
        cur, nxt = poly_pts[j], poly_pts[(j + 1) % m]
        sc = cur[0] * nx + cur[1] * ny - off
        sn = nxt[0] * nx + nxt[1] * ny - off
        if sc >= 0:
            out.append(cur)
        if sc * sn < 0:
            t = sc / (sc - sn)
            out.append((cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])))
    return out


def _erode_convex(p: ConvexPolygon, delta: float) -> ConvexPolygon:
    _, rho = chebyshev_center(p)
    if delta >= rho:
        raise ErodedToEmpty(f"erosion radius {delta:.6g} >= inradius {rho:.6g}")
    # clip the bounding box by every inward-shifted edge halfplane
    x0, y0, x1, y1 = p.bbox()
    poly = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    for (nx, ny), off in zip(p._nin, p._off):
        poly = _halfplane_clip(poly, nx, ny, off + delta)
        if len(poly) < 3:
            raise ErodedToEmpty("eroded polygon collapsed")
    try:
        return ConvexPolygon(np.asarray(poly))
    except BadParams as exc:
        raise ErodedToEmpty("eroded polygon degenerate") from exc


def _raster_morph(r: RasterRegion, delta: float, grow: bool) -> RasterRegion:
    from scipy.ndimage import distance_transform_edt
    if grow:
        pad_cells = int(np.ceil(delta / r.cell_size)) + 2
        g = np.pad(r.grid, pad_cells, constant_values=False)
        d = distance_transform_edt(~g) * r.cell_size
        origin = r.origin - pad_cells * r.cell_size
        return RasterRegion(origin, r.cell_size, g | (d <= delta))
    d = distance_transform_edt(r.grid) * r.cell_size
    g = d > delta
    if not g.any():
        raise ErodedToEmpty("raster erosion removed every cell")
    return RasterRegion(r.origin, r.cell_size, g)


def outer_shell(r, delta: float):
    """dilate(r, delta) minus r."""
    return subtract(dilate(r, delta), r)


def inner_shell(r, delta: float):
    """r minus erode(r, delta); equals r when the erosion empties."""
    try:
        er = erode(r, delta)
    except ErodedToEmpty:
        return r
    return subtract(r, er)


# ---- rasterization and booleans ----------------------------------------------

def rasterize(r, cells: int = DEFAULT_CELLS, bbox=None, pad: float = 0.0) -> RasterRegion:
    """Sample region membership on a square-cell grid over its bounding box."""
    if cells < 2:
        raise BadParams("cells must be at least 2")
    if bbox is None:
        bbox = r.bbox()
    x0, y0, x1, y1 = bbox
    x0 -= pad
    y0 -= pad
    x1 += pad
    y1 += pad
    w = max(x1 - x0, y1 - y0)
    if w <= 0:
        raise BadParams("empty bounding box")
    cell = w / cells
    nx = max(1, int(np.ceil((x1 - x0) / cell)))
    ny = max(1, int(np.ceil((y1 - y0) / cell)))
    xs = x0 + (np.arange(nx) + 0.5) * cell
    ys = y0 + (np.arange(ny) + 0.5) * cell
    grid = np.zeros((ny, nx), dtype=bool)
    # evaluate in row blocks to bound memory
    block = max(1, int(4_000_000 / max(nx, 1)))
    for i0 in range(0, ny, block):
        i1 = min(ny, i0 + block)
        yy, xx = np.meshgrid(ys[i0:i1], xs, indexing="ij")
        pts = np.stack([xx.ravel(), yy.ravel()], axis=1)
        grid[i0:i1] = r.contains(pts).reshape(i1 - i0, nx)
    return RasterRegion(np.array([x0, y0]), cell, grid)


def _joint_raster(a, b, cells: int):
    ba, bb = a.bbox(), b.bbox()
    bbox = (min(ba[0], bb[0]), min(ba[1], bb[1]), max(ba[2], bb[2]), max(ba[3], bb[3]))
    ra = rasterize(a, cells, bbox=bbox)
    rb = rasterize(b, cells, bbox=bbox)
    return ra, rb


def _boolean_raster(a, b, op, cells: int) -> RasterRegion:
    def combine(n):
        ra, rb = _joint_raster(a, b, n)
        return RasterRegion(ra.origin, ra.cell_size, op(ra.grid, rb.grid))

    coarse = combine(cells)
    fine = combine(cells * 2)
    ref = max(coarse.area, fine.area, 1e-12)
    if abs(coarse.area - fine.area) > 0.01 * ref:
        raise ResolutionTooCoarse(
            f"area moved {coarse.area:.6g} -> {fine.area:.6g} under refinement; raise cells")
    return coarse


def intersect(a, b, cells: int = DEFAULT_CELLS):
    """Intersection; exact convex clipping when both inputs are convex."""
    if isinstance(a, ConvexPolygon) and isinstance(b, ConvexPolygon):
        clipped = clip_convex(a, b)
        if clipped is None:
            return _empty_raster(a, b)
        return clipped
    return _boolean_raster(a, b, np.logical_and, cells)


def union(a, b, cells: int = DEFAULT_CELLS):
    return _boolean_raster(a, b, np.logical_or, cells)


def subtract(a, b, cells: int = DEFAULT_CELLS):
    return _boolean_raster(a, b, lambda x, y: x & ~y, cells)


def sym_diff(a, b, cells: int = DEFAULT_CELLS):
    if a is b:
        return _empty_raster(a, b)
    return _boolean_raster(a, b, np.logical_xor, cells)


def _empty_raster(a, b) -> RasterRegion:
    ba, bb = a.bbox(), b.bbox()
    x0 = min(ba[0], bb[0])
    y0 = min(ba[1], bb[1])
    w = max(ba[2], bb[2]) - x0
    return RasterRegion(np.array([x0, y0]), max(w, 1e-9), np.zeros((1, 1), dtype=bool))


def clip_convex(a: ConvexPolygon, b: ConvexPolygon):
    """Sutherland-Hodgman clip of a by b; None when the intersection is empty."""
    poly = [tuple(v) for v in a.vertices]
    bv = b.vertices
    n = bv.shape[0]
    for i in range(n):
        p0 = bv[i]
        p1 = bv[(i + 1) % n]
        dx, dy = p1[0] - p0[0], p1[1] - p0[1]

        def side(pt):
            return dx * (pt[1] - p0[1]) - dy * (pt[0] - p0[0])

        new_poly = []
        m = len(poly)
        for j in range(m):
            cur, nxt = poly[j], poly[(j + 1) % m]
            sc, sn = side(cur), side(nxt)
            if sc >= 0:
                new_poly.append(cur)
            if sc * sn < 0:
                t = sc / (sc - sn)
                new_poly.append((cur[0] + t * (nxt[0] - cur[0]),
                                 cur[1] + t * (nxt[1] - cur[1])))
        poly = new_poly
        if len(poly) < 3:
            return None
    try:
        return ConvexPolygon(poly)
    except BadParams:
        return None


def intersection_area(a, b, cells: int = DEFAULT_CELLS) -> float:
    """Exact for convex/two-component pairs and polar pairs; raster otherwise."""
    parts_a = a.components()
    parts_b = b.components()
    if all(isinstance(p, ConvexPolygon) for p in parts_a + parts_b):
        total = 0.0
        for p in parts_a:
            for q in parts_b:
                clipped = clip_convex(p, q)
                if clipped is not None:
                    total += clipped.area
        return total
    if isinstance(a, PolarRegion) and isinstance(b, PolarRegion):
        return _polar_intersection_area(a, b)
    return intersect(a, b, cells).area


def _radial_intervals(r: PolarRegion, theta: float):
    iv = [(0.0, r.r_base)]
    for a0, a1, ri, ro in r.segments:
        if a0 <= theta < a1:
            if ri <= r.r_base * (1 + 1e-12):
                iv = [(0.0, ro)]
            else:
                iv.append((ri, ro))
    return iv


def _polar_intersection_area(a: PolarRegion, b: PolarRegion) -> float:
    """Angular sweep: radial cross sections are piecewise constant in theta."""
    cuts = {0.0, 2.0 * np.pi}
    for r in (a, b):
        for a0, a1, _, _ in r.segments:
            cuts.add(a0)
            cuts.add(a1)
    cuts = sorted(cuts)
    total = 0.0
    for t0, t1 in zip(cuts[:-1], cuts[1:]):
        if t1 - t0 < 1e-15:
            continue
        mid = 0.5 * (t0 + t1)
        for lo_a, hi_a in _radial_intervals(a, mid):
            for lo_b, hi_b in _radial_intervals(b, mid):
                lo = max(lo_a, lo_b)
                hi = min(hi_a, hi_b)
                if hi > lo:
                    total += 0.5 * (hi * hi - lo * lo) * (t1 - t0)
    return total


# ---- hull, sampling ------------------------------------------------------------

def _outline_points(r) -> np.ndarray:
    if isinstance(r, ConvexPolygon):
        return r.vertices
    if isinstance(r, TwoComponent):
        return np.vstack([r.first.vertices, r.second.vertices])
    step = max(r.diameter, 1e-9) / 720.0
    return r.boundary_points(step)


def convex_hull(a, b=None) -> ConvexPolygon:
    """Convex hull of one region or of the union of two."""
    pts = _outline_points(a)
    if b is not None:
        pts = np.vstack([pts, _outline_points(b)])
    return hull_of_points(pts)


def hull_of_points(pts) -> ConvexPolygon:
    """Monotone-chain convex hull."""
    pts = as_points(pts)
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    p = pts[order]
    p = p[np.concatenate([[True], np.any(np.diff(p, axis=0) != 0, axis=1)])]
    if p.shape[0] < 3:
        raise BadParams("hull needs at least 3 distinct points")

    def half(points):
        out = []
        for pt in points:
            while len(out) >= 2:
                ox, oy = out[-2]
                ax, ay = out[-1]
                if (ax - ox) * (pt[1] - oy) - (ay - oy) * (pt[0] - ox) <= 0:
                    out.pop()
                else:
                    break
            out.append((pt[0], pt[1]))
        return out

    lower = half(p)
    upper = half(p[::-1])
    return ConvexPolygon(np.asarray(lower[:-1] + upper[:-1]))


def sample_uniform(r, n: int, seed: int) -> np.ndarray:
    """n points uniform over the region by rejection from its bounding box."""
    if n <= 0:
        raise BadParams("sample count must be positive")
    rng = np.random.default_rng(seed)
    x0, y0, x1, y1 = r.bbox()
    got = []
    count = 0
    guard = 0
    while count < n:
        m = max(1024, 2 * (n - count))
        pts = rng.random((m, 2))
        pts[:, 0] = x0 + pts[:, 0] * (x1 - x0)
        pts[:, 1] = y0 + pts[:, 1] * (y1 - y0)
        keep = pts[r.contains(pts)]
        got.append(keep)
        count += keep.shape[0]
        guard += 1
        if guard > 10_000:
            raise BadParams("rejection sampling failed; region too thin for its bbox")
    return np.vstack(got)[:n]


def boundary_sample(r, step: float) -> np.ndarray:
    return r.boundary_points(step)
