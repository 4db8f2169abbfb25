"""Region types for bounded open subsets of the plane.

Four constructible types:
  ConvexPolygon  strictly convex polygon, CCW vertex order
  TwoComponent   union of two strictly separated convex polygons
  PolarRegion    origin-centered disc plus annular wedge segments
  RasterRegion   boolean occupancy grid with square cells

plus RadialPolygon, an internal star-shaped type produced by morphing.

All point-valued methods accept (n, 2) float arrays and vectorize over rows.
Metrics treat regions through their closures, so membership tests use closed
inequalities with a small relative tolerance.
"""

from __future__ import annotations

import numpy as np

from .errors import BadParams

_REL_TOL = 1e-9


def as_points(a) -> np.ndarray:
    """Coerce input to an (n, 2) float array."""
    pts = np.asarray(a, dtype=float)
    if pts.ndim == 1:
        if pts.shape[0] != 2:
            raise BadParams("expected a point of shape (2,)")
        pts = pts.reshape(1, 2)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise BadParams("expected points of shape (n, 2)")
    if not np.all(np.isfinite(pts)):
        raise BadParams("points must be finite")
    return pts


def _segment_distances(pts: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distances from each of m points to each of k segments, shape (m, k)."""
    e = b - a
    ln2 = np.maximum((e * e).sum(axis=1), 1e-300)
    d = pts[:, None, :] - a[None, :, :]
    t = np.clip((d * e[None, :, :]).sum(axis=2) / ln2[None, :], 0.0, 1.0)
    proj = a[None, :, :] + t[:, :, None] * e[None, :, :]
    diff = pts[:, None, :] - proj
    return np.sqrt((diff * diff).sum(axis=2))


def _unit(theta):
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)


class ConvexPolygon:
    """Strictly convex polygon given by CCW vertices.

    The constructor drops duplicate and collinear vertices, reverses CW input,
    and rejects anything that is not strictly convex with positive area.
    """

    kind = "convex_polygon"

    def __init__(self, vertices):
        v = as_points(vertices)
        if v.shape[0] < 3:
            raise BadParams("a polygon needs at least 3 vertices")
        scale = float(np.abs(v).max()) + 1.0
        # drop consecutive duplicates (closed chain)
        keep = np.ones(v.shape[0], dtype=bool)
        for i in range(v.shape[0]):
            j = (i + 1) % v.shape[0]
            if np.hypot(*(v[i] - v[j])) <= _REL_TOL * scale and keep[i]:
                keep[j] = False
        v = v[keep]
        if v.shape[0] < 3:
            raise BadParams("degenerate polygon")
        if _shoelace(v) < 0:
            v = v[::-1].copy()
        # drop collinear vertices
        tol2 = (_REL_TOL * scale) ** 2 * 100.0
        keep = []
        n = v.shape[0]
        for i in range(n):
            a, b, c = v[i - 1], v[i], v[(i + 1) % n]
            cr = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
            if cr > tol2:
                keep.append(i)
        v = v[keep]
        if v.shape[0] < 3:
            raise BadParams("polygon is degenerate after collinear removal")
        n = v.shape[0]
        crosses = []
        for i in range(n):
            a, b, c = v[i - 1], v[i], v[(i + 1) % n]
            crosses.append((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
        if min(crosses) <= 0:
            raise BadParams("polygon is not strictly convex")
        self.vertices = v
        self._scale = scale
        self._seg_a = v
        self._seg_b = np.roll(v, -1, axis=0)
        e = self._seg_b - self._seg_a
        ln = np.hypot(e[:, 0], e[:, 1])
        # for CCW order the inward normal of edge (a -> b) is the left normal
        self._nin = np.stack([-e[:, 1], e[:, 0]], axis=1) / ln[:, None]
        self._off = (self._nin * self._seg_a).sum(axis=1)
        self._edge_len = ln
        self._area = _shoelace(v)
        self._tol = _REL_TOL * scale

    @property
    def area(self) -> float:
        return self._area

    @property
    def perimeter(self) -> float:
        return float(self._edge_len.sum())

    @property
    def diameter(self) -> float:
        d = self.vertices[:, None, :] - self.vertices[None, :, :]
        return float(np.sqrt((d * d).sum(axis=2)).max())

    def bbox(self):
        v = self.vertices
        return (v[:, 0].min(), v[:, 1].min(), v[:, 0].max(), v[:, 1].max())

    def signed_inner(self, pts: np.ndarray) -> np.ndarray:
        """min over edges of inward signed distance; > 0 inside, < 0 outside."""
        pts = as_points(pts)
        n = self._nin.shape[0]
        # block so pts x edges stays bounded for many-sided polygons
        block = max(1, 4_000_000 // max(n, 1))
        if pts.shape[0] <= block:
            return (pts @ self._nin.T - self._off[None, :]).min(axis=1)
        out = np.empty(pts.shape[0])
        for i0 in range(0, pts.shape[0], block):
            chunk = pts[i0:i0 + block]
            out[i0:i0 + block] = (chunk @ self._nin.T - self._off[None, :]).min(axis=1)
        return out

    def contains(self, pts) -> np.ndarray:
        return self.signed_inner(pts) >= -self._tol

    def distance(self, pts) -> np.ndarray:
        """Euclidean distance to the closure, 0 inside."""
        pts = as_points(pts)
        s = self.signed_inner(pts)
        out = np.zeros(pts.shape[0])
        mask = s < 0
        if mask.any():
            out[mask] = _segment_distances(pts[mask], self._seg_a, self._seg_b).min(axis=1)
        return out

    def depth(self, pts) -> np.ndarray:
        """Distance to the complement, 0 outside the closure."""
        return np.maximum(self.signed_inner(pts), 0.0)

    def boundary_points(self, step: float) -> np.ndarray:
        if step <= 0:
            raise BadParams("step must be positive")
        chunks = []
        for a, b, ln in zip(self._seg_a, self._seg_b, self._edge_len):
            k = max(1, int(np.ceil(ln / step)))
            t = np.arange(k) / k
            chunks.append(a[None, :] + t[:, None] * (b - a)[None, :])
        return np.vstack(chunks)

    def components(self):
        return [self]

    def ray_radii(self, origin, thetas) -> np.ndarray:
        """Exact distances from an interior origin to the boundary along each angle."""
        o = as_points(origin)[0]
        if self.signed_inner(o[None, :])[0] <= self._tol:
            raise BadParams("ray origin must be interior")
        u = _unit(np.asarray(thetas, dtype=float))
        num = self._off[None, :] - (o @ self._nin.T)[None, :]
        den = u @ self._nin.T
        with np.errstate(divide="ignore", invalid="ignore"):
            s = np.where(den < -1e-15, num / den, np.inf)
        return s.min(axis=1)

    def __repr__(self):
        return f"ConvexPolygon({self.vertices.shape[0]} vertices, area={self._area:.6g})"


def _shoelace(v: np.ndarray) -> float:
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def box(x0: float, y0: float, x1: float, y1: float) -> ConvexPolygon:
    """Axis-aligned rectangle (x0, x1) x (y0, y1)."""
    if not (x1 > x0 and y1 > y0):
        raise BadParams("box needs x1 > x0 and y1 > y0")
    return ConvexPolygon([[x0, y0], [x1, y0], [x1, y1], [x0, y1]])


def regular_polygon(center, r: float, n: int, phase: float = 0.0) -> ConvexPolygon:
    c = as_points(center)[0]
    th = phase + 2.0 * np.pi * np.arange(n) / n
    return ConvexPolygon(c[None, :] + r * _unit(th))


class TwoComponent:
    """Union of two strictly separated convex polygons."""

    kind = "two_component"

    def __init__(self, first: ConvexPolygon, second: ConvexPolygon):
        if not isinstance(first, ConvexPolygon) or not isinstance(second, ConvexPolygon):
            raise BadParams("TwoComponent takes two ConvexPolygon parts")
        gap = convex_pair_distance(first, second)
        scale = max(first._scale, second._scale)
        if gap <= _REL_TOL * scale * 10.0:
            raise BadParams("components must be strictly separated")
        self.first = first
        self.second = second
        self.separation = gap

    @property
    def area(self) -> float:
        return self.first.area + self.second.area

    @property
    def perimeter(self) -> float:
        return self.first.perimeter + self.second.perimeter

    @property
    def diameter(self) -> float:
        v = np.vstack([self.first.vertices, self.second.vertices])
        d = v[:, None, :] - v[None, :, :]
        return float(np.sqrt((d * d).sum(axis=2)).max())

    def bbox(self):
        b1, b2 = self.first.bbox(), self.second.bbox()
        return (min(b1[0], b2[0]), min(b1[1], b2[1]), max(b1[2], b2[2]), max(b1[3], b2[3]))

    def contains(self, pts) -> np.ndarray:
        return self.first.contains(pts) | self.second.contains(pts)

    def distance(self, pts) -> np.ndarray:
        return np.minimum(self.first.distance(pts), self.second.distance(pts))

    def depth(self, pts) -> np.ndarray:
        # parts are disjoint, so at most one term is nonzero
        return np.maximum(self.first.depth(pts), self.second.depth(pts))

    def boundary_points(self, step: float) -> np.ndarray:
        return np.vstack([self.first.boundary_points(step), self.second.boundary_points(step)])

    def components(self):
        return [self.first, self.second]

    def __repr__(self):
        return f"TwoComponent(separation={self.separation:.6g})"


def convex_pair_distance(p: ConvexPolygon, q: ConvexPolygon) -> float:
    """Exact distance between two convex polygons (0 if they overlap)."""
    if p.contains(q.vertices).any() or q.contains(p.vertices).any():
        return 0.0
    if _edges_cross(p, q):
        return 0.0
    # disjoint convex sets: the minimum is attained vertex-to-edge
    d1 = _segment_distances(p.vertices, q._seg_a, q._seg_b).min()
    d2 = _segment_distances(q.vertices, p._seg_a, p._seg_b).min()
    return float(min(d1, d2))


def _cross_z(dx, dy, px, py):
    return dx * py - dy * px


def _edges_cross(p: ConvexPolygon, q: ConvexPolygon) -> bool:
    a1, b1 = p._seg_a, p._seg_b
    a2, b2 = q._seg_a, q._seg_b
    for i in range(a1.shape[0]):
        d1 = b1[i] - a1[i]
        s1 = _cross_z(d1[0], d1[1], a2[:, 0] - a1[i, 0], a2[:, 1] - a1[i, 1])
        s2 = _cross_z(d1[0], d1[1], b2[:, 0] - a1[i, 0], b2[:, 1] - a1[i, 1])
        for j in range(a2.shape[0]):
            if s1[j] * s2[j] < 0:
                d2 = b2[j] - a2[j]
                t1 = _cross_z(d2[0], d2[1], a1[i, 0] - a2[j, 0], a1[i, 1] - a2[j, 1])
                t2 = _cross_z(d2[0], d2[1], b1[i, 0] - a2[j, 0], b1[i, 1] - a2[j, 1])
                if t1 * t2 < 0:
                    return True
    return False


class PolarRegion:
    """Origin-centered disc of radius r_base plus annular wedge segments.

    Each segment is (theta0, theta1, r_inner, r_outer) with r_inner >= r_base.
    Segments are normalized into [0, 2*pi), wrap-around inputs are split, and
    overlapping angular intervals are rejected.  With r_inner == r_base the
    wedge attaches to the disc and the region stays star-shaped about 0.
    """

    kind = "polar"

    def __init__(self, r_base: float, segments=()):
        if not (r_base > 0 and np.isfinite(r_base)):
            raise BadParams("r_base must be positive and finite")
        self.r_base = float(r_base)
        segs = []
        for seg in segments:
            t0, t1, ri, ro = (float(x) for x in seg)
            w = t1 - t0
            if not (w > 0 and w < 2.0 * np.pi):
                raise BadParams("segment width must lie in (0, 2*pi)")
            if ri < r_base - _REL_TOL * r_base:
                raise BadParams("segment r_inner must be >= r_base")
            ri = max(ri, r_base)
            if not ro > ri:
                raise BadParams("segment needs r_outer > r_inner")
            t0n = t0 % (2.0 * np.pi)
            t1n = t0n + w
            if t1n <= 2.0 * np.pi + 1e-15:
                segs.append((t0n, min(t1n, 2.0 * np.pi), ri, ro))
            else:
                segs.append((t0n, 2.0 * np.pi, ri, ro))
                segs.append((0.0, t1n - 2.0 * np.pi, ri, ro))
        segs.sort(key=lambda s: s[0])
        for i in range(1, len(segs)):
            if segs[i][0] < segs[i - 1][1] - 1e-12:
                raise BadParams("segments overlap in angle")
        if len(segs) >= 2 and segs[0][0] + 2.0 * np.pi < segs[-1][1] - 1e-12:
            raise BadParams("segments overlap in angle across the wrap")
        self.segments = segs
        arr = np.asarray(segs, dtype=float).reshape(len(segs), 4)
        self._a0 = arr[:, 0]
        self._a1 = arr[:, 1]
        self._ri = arr[:, 2]
        self._ro = arr[:, 3]
        self._attached = self._ri <= self.r_base * (1.0 + 1e-12)
        self._rmax = float(max([r_base] + [s[3] for s in segs]))
        self._tol = _REL_TOL * self._rmax
        self._build_features()

    # ---- boundary features -------------------------------------------------

    def _build_features(self):
        """Compile boundary arcs and radial side segments.

        Sides shared by two segments adjacent in angle with equal radii (the
        wrap-around split case) are interior and skipped.  Touching segments
        with different radii are not supported by the catalogs and would make
        depth a lower bound only.
        """
        arcs = []   # (radius, a0, a1)
        sides = []  # ((x0,y0),(x1,y1))
        two_pi = 2.0 * np.pi
        # disc arcs: complement of attached segments' angles
        att = [(a0, a1) for (a0, a1, ri, ro), a in zip(self.segments, self._attached) if a]
        att.sort()
        cur = 0.0
        for a0, a1 in att:
            if a0 > cur + 1e-15:
                arcs.append((self.r_base, cur, a0))
            cur = max(cur, a1)
        if cur < two_pi - 1e-15:
            arcs.append((self.r_base, cur, two_pi))
        if not att:
            arcs = [(self.r_base, 0.0, two_pi)]
        n = len(self.segments)
        for i, (a0, a1, ri, ro) in enumerate(self.segments):
            arcs.append((ro, a0, a1))
            if not self._attached[i]:
                arcs.append((ri, a0, a1))
            # skip sides glued to an angularly adjacent equal-radius segment
            for ang, ang_end in ((a0, "lo"), (a1, "hi")):
                glued = False
                for j, (b0, b1, si, so) in enumerate(self.segments):
                    if j == i:
                        continue
                    if abs(si - ri) > 1e-12 or abs(so - ro) > 1e-12:
                        continue
                    if ang_end == "lo" and abs((b1 - ang) % two_pi) < 1e-12:
                        glued = True
                    if ang_end == "hi" and abs((b0 - ang) % two_pi) < 1e-12:
                        glued = True
                if not glued:
                    u = np.array([np.cos(ang), np.sin(ang)])
                    sides.append((ri * u, ro * u))
        self._arc_r = np.asarray([a[0] for a in arcs])
        self._arc_a0 = np.asarray([a[1] for a in arcs])
        self._arc_a1 = np.asarray([a[2] for a in arcs])
        if sides:
            self._side_a = np.asarray([s[0] for s in sides])
            self._side_b = np.asarray([s[1] for s in sides])
        else:
            self._side_a = np.zeros((0, 2))
            self._side_b = np.zeros((0, 2))

    # ---- measures ----------------------------------------------------------

    @property
    def area(self) -> float:
        a = np.pi * self.r_base ** 2
        a += float((0.5 * (self._ro ** 2 - self._ri ** 2) * (self._a1 - self._a0)).sum())
        return a

    @property
    def perimeter(self) -> float:
        p = float((self._arc_r * (self._arc_a1 - self._arc_a0)).sum())
        if self._side_a.shape[0]:
            e = self._side_b - self._side_a
            p += float(np.hypot(e[:, 0], e[:, 1]).sum())
        return p

    @property
    def diameter(self) -> float:
        # sampled extremal estimate; adequate for step defaults
        pts = self.boundary_points(self._rmax * 2.0 * np.pi / 512.0)
        if pts.shape[0] > 1024:
            pts = pts[:: max(1, pts.shape[0] // 1024)]
        d = pts[:, None, :] - pts[None, :, :]
        return float(np.sqrt((d * d).sum(axis=2)).max())

    def bbox(self):
        r = self._rmax
        return (-r, -r, r, r)

    # ---- point queries -----------------------------------------------------

    def _polar(self, pts):
        pts = as_points(pts)
        r = np.hypot(pts[:, 0], pts[:, 1])
        th = np.arctan2(pts[:, 1], pts[:, 0]) % (2.0 * np.pi)
        return pts, r, th

    def _in_segment(self, r, th):
        """Boolean mask: point lies in some wedge segment (closure)."""
        ok = np.zeros(r.shape[0], dtype=bool)
        for a0, a1, ri, ro in self.segments:
            ang = (th >= a0 - 1e-12) & (th <= a1 + 1e-12)
            ok |= ang & (r >= ri - self._tol) & (r <= ro + self._tol)
        return ok

    def contains(self, pts) -> np.ndarray:
        pts, r, th = self._polar(pts)
        return (r <= self.r_base + self._tol) | self._in_segment(r, th)

    def distance(self, pts) -> np.ndarray:
        pts, r, th = self._polar(pts)
        best = np.maximum(r - self.r_base, 0.0)
        for a0, a1, ri, ro in self.segments:
            ang = (th >= a0) & (th <= a1)
            d = np.full(r.shape[0], np.inf)
            radial = np.maximum(np.maximum(ri - r, r - ro), 0.0)
            d[ang] = radial[ang]
            out = ~ang
            if out.any():
                u0 = np.array([np.cos(a0), np.sin(a0)])
                u1 = np.array([np.cos(a1), np.sin(a1)])
                sa = np.asarray([ri * u0, ri * u1])
                sb = np.asarray([ro * u0, ro * u1])
                d[out] = _segment_distances(pts[out], sa, sb).min(axis=1)
            best = np.minimum(best, d)
        return best

    def depth(self, pts) -> np.ndarray:
        pts, r, th = self._polar(pts)
        inside = self.contains(pts)
        out = np.zeros(r.shape[0])
        if not inside.any():
            return out
        p_in = pts[inside]
        r_in = r[inside]
        th_in = th[inside]
        best = np.full(p_in.shape[0], np.inf)
        for radius, a0, a1 in zip(self._arc_r, self._arc_a0, self._arc_a1):
            ang = (th_in >= a0) & (th_in <= a1)
            d = np.full(p_in.shape[0], np.inf)
            d[ang] = np.abs(r_in[ang] - radius)
            for ang_end in (a0, a1):
                e = radius * np.array([np.cos(ang_end), np.sin(ang_end)])
                d = np.minimum(d, np.hypot(p_in[:, 0] - e[0], p_in[:, 1] - e[1]))
            best = np.minimum(best, d)
        if self._side_a.shape[0]:
            best = np.minimum(best, _segment_distances(p_in, self._side_a, self._side_b).min(axis=1))
        out[inside] = best
        return out

    def boundary_points(self, step: float) -> np.ndarray:
        if step <= 0:
            raise BadParams("step must be positive")
        chunks = []
        for radius, a0, a1 in zip(self._arc_r, self._arc_a0, self._arc_a1):
            arclen = radius * (a1 - a0)
            k = max(2, int(np.ceil(arclen / step)) + 1)
            th = np.linspace(a0, a1, k)
            chunks.append(radius * _unit(th))
        for a, b in zip(self._side_a, self._side_b):
            ln = np.hypot(*(b - a))
            k = max(1, int(np.ceil(ln / step)))
            t = np.linspace(0.0, 1.0, k + 1)
            chunks.append(a[None, :] + t[:, None] * (b - a)[None, :])
        return np.vstack(chunks)

    def components(self):
        return [self]

    def is_star_shaped(self) -> bool:
        """True when every wedge attaches to the base disc."""
        return bool(self._attached.all())

    def ray_radii(self, origin, thetas) -> np.ndarray:
        """Boundary radius along each angle from the origin; needs attached wedges."""
        o = as_points(origin)[0]
        if np.hypot(o[0], o[1]) > self._tol:
            raise BadParams("polar ray tables are centered at the origin")
        if not self.is_star_shaped():
            raise BadParams("detached wedges break the radial parameterization")
        th = np.asarray(thetas, dtype=float) % (2.0 * np.pi)
        out = np.full(th.shape[0], self.r_base)
        for a0, a1, _, ro in self.segments:
            sel = (th >= a0) & (th < a1)
            out[sel] = ro
        return out

    def __repr__(self):
        return f"PolarRegion(r_base={self.r_base:.6g}, {len(self.segments)} segments)"


def disc(r: float) -> PolarRegion:
    return PolarRegion(r)


class RasterRegion:
    """Occupancy grid: cell (i, j) covers origin + cell_size * ([j, j+1] x [i, i+1]).

    Row 0 is the bottom row.  A cell is occupied when the region it represents
    contains the cell center, so geometric queries carry an error of up to
    half a cell diagonal.
    """

    kind = "raster"

    def __init__(self, origin, cell_size: float, grid):
        o = as_points(origin)[0]
        if not (cell_size > 0 and np.isfinite(cell_size)):
            raise BadParams("cell_size must be positive")
        g = np.asarray(grid, dtype=bool)
        if g.ndim != 2 or g.size == 0:
            raise BadParams("grid must be a 2-d boolean array")
        self.origin = o
        self.cell_size = float(cell_size)
        self.grid = g
        self._kdtree = None
        self._edt_in = None

    @property
    def query_error(self) -> float:
        """Half cell diagonal: bound on distance/depth discretization error."""
        return self.cell_size * np.sqrt(2.0) / 2.0

    @property
    def area(self) -> float:
        return float(self.grid.sum()) * self.cell_size ** 2

    @property
    def perimeter(self) -> float:
        """Total length of exposed cell edges; a staircase overestimate."""
        g = self.grid
        pad = np.pad(g, 1, constant_values=False)
        exposed = 0
        exposed += (g & ~pad[:-2, 1:-1]).sum()
        exposed += (g & ~pad[2:, 1:-1]).sum()
        exposed += (g & ~pad[1:-1, :-2]).sum()
        exposed += (g & ~pad[1:-1, 2:]).sum()
        return float(exposed) * self.cell_size

    @property
    def diameter(self) -> float:
        pts = self.boundary_points(self.cell_size)
        if pts.shape[0] == 0:
            return 0.0
        if pts.shape[0] > 2048:
            pts = pts[:: max(1, pts.shape[0] // 2048)]
        d = pts[:, None, :] - pts[None, :, :]
        return float(np.sqrt((d * d).sum(axis=2)).max()) + self.cell_size * np.sqrt(2.0)

    def bbox(self):
        ny, nx = self.grid.shape
        return (self.origin[0], self.origin[1],
                self.origin[0] + nx * self.cell_size, self.origin[1] + ny * self.cell_size)

    def cell_centers(self, mask=None) -> np.ndarray:
        ny, nx = self.grid.shape
        m = self.grid if mask is None else mask
        ii, jj = np.nonzero(m)
        x = self.origin[0] + (jj + 0.5) * self.cell_size
        y = self.origin[1] + (ii + 0.5) * self.cell_size
        return np.stack([x, y], axis=1)

    def _indices(self, pts):
        pts = as_points(pts)
        j = np.floor((pts[:, 0] - self.origin[0]) / self.cell_size).astype(int)
        i = np.floor((pts[:, 1] - self.origin[1]) / self.cell_size).astype(int)
        ny, nx = self.grid.shape
        ok = (i >= 0) & (i < ny) & (j >= 0) & (j < nx)
        return pts, i, j, ok

    def contains(self, pts) -> np.ndarray:
        pts, i, j, ok = self._indices(pts)
        out = np.zeros(pts.shape[0], dtype=bool)
        if ok.any():
            out[ok] = self.grid[i[ok], j[ok]]
        return out

    def distance(self, pts) -> np.ndarray:
        """Distance to the nearest occupied cell center (error <= query_error)."""
        pts = as_points(pts)
        if not self.grid.any():
            return np.full(pts.shape[0], np.inf)
        if self._kdtree is None:
            from scipy.spatial import cKDTree
            self._kdtree = cKDTree(self.cell_centers())
        d, _ = self._kdtree.query(pts)
        d = np.asarray(d, dtype=float)
        d[self.contains(pts)] = 0.0
        return d

    def depth(self, pts) -> np.ndarray:
        if self._edt_in is None:
            from scipy.ndimage import distance_transform_edt
            # zero ring so the transform sees background even on a tight grid
            padded = np.pad(self.grid, 1, constant_values=False)
            self._edt_in = distance_transform_edt(padded)[1:-1, 1:-1] * self.cell_size
        pts, i, j, ok = self._indices(pts)
        out = np.zeros(pts.shape[0])
        sel = ok.copy()
        if sel.any():
            out[sel] = np.maximum(self._edt_in[i[sel], j[sel]] - self.cell_size * 0.5, 0.0)
        return out

    def boundary_mask(self) -> np.ndarray:
        g = self.grid
        pad = np.pad(g, 1, constant_values=False)
        interior = (pad[:-2, 1:-1] & pad[2:, 1:-1] & pad[1:-1, :-2] & pad[1:-1, 2:])
        return g & ~interior

    def boundary_points(self, step: float = 0.0) -> np.ndarray:
        pts = self.cell_centers(self.boundary_mask())
        if step > self.cell_size and pts.shape[0]:
            stride = max(1, int(step / self.cell_size))
            pts = pts[::stride]
        return pts

    def components(self):
        return [self]

    def __repr__(self):
        return f"RasterRegion({self.grid.shape[0]}x{self.grid.shape[1]} cells of {self.cell_size:.4g})"


class RadialPolygon:
    """Star-shaped polygon: center plus dense per-angle radii, produced by morphing.

    Membership is exact for the polygon; distance queries are resolved through
    a vertex KD-tree refined against the edges adjacent to the nearest vertex,
    with residual error bounded by query_error.
    """

    kind = "radial_polygon"

    def __init__(self, center, thetas, radii):
        self.center = as_points(center)[0]
        th = np.asarray(thetas, dtype=float)
        r = np.asarray(radii, dtype=float)
        if th.ndim != 1 or th.shape != r.shape or th.shape[0] < 8:
            raise BadParams("need matching 1-d thetas and radii, at least 8 rays")
        if np.any(np.diff(th) <= 0) or th[0] < 0 or th[-1] >= 2.0 * np.pi:
            raise BadParams("thetas must be strictly increasing in [0, 2*pi)")
        if np.any(r <= 0):
            raise BadParams("radii must be positive")
        self.thetas = th
        self.radii = r
        self.vertices = self.center[None, :] + r[:, None] * _unit(th)
        self._kdtree = None
        e = np.roll(self.vertices, -1, axis=0) - self.vertices
        self._max_edge = float(np.hypot(e[:, 0], e[:, 1]).max())

    @property
    def query_error(self) -> float:
        return self._max_edge * 0.5

    @property
    def area(self) -> float:
        return _shoelace(self.vertices)

    @property
    def perimeter(self) -> float:
        e = np.roll(self.vertices, -1, axis=0) - self.vertices
        return float(np.hypot(e[:, 0], e[:, 1]).sum())

    @property
    def diameter(self) -> float:
        v = self.vertices
        if v.shape[0] > 1024:
            v = v[:: v.shape[0] // 1024]
        d = v[:, None, :] - v[None, :, :]
        return float(np.sqrt((d * d).sum(axis=2)).max())

    def bbox(self):
        v = self.vertices
        return (v[:, 0].min(), v[:, 1].min(), v[:, 0].max(), v[:, 1].max())

    def _crossing_radius(self, th: np.ndarray) -> np.ndarray:
        """Distance from center to the boundary chord along each angle."""
        idx = np.searchsorted(self.thetas, th, side="right") - 1
        idx = idx % self.thetas.shape[0]
        nxt = (idx + 1) % self.thetas.shape[0]
        p1 = self.vertices[idx] - self.center
        p2 = self.vertices[nxt] - self.center
        d = p2 - p1
        u = _unit(th)
        den = u[:, 0] * d[:, 1] - u[:, 1] * d[:, 0]
        num = p1[:, 0] * d[:, 1] - p1[:, 1] * d[:, 0]
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.where(np.abs(den) > 1e-300, num / den, np.inf)
        return np.abs(t)

    def contains(self, pts) -> np.ndarray:
        pts = as_points(pts)
        v = pts - self.center[None, :]
        r = np.hypot(v[:, 0], v[:, 1])
        th = np.arctan2(v[:, 1], v[:, 0]) % (2.0 * np.pi)
        rc = self._crossing_radius(th)
        return r <= rc + 1e-12 * (1.0 + rc)

    def distance(self, pts) -> np.ndarray:
        pts = as_points(pts)
        out = np.zeros(pts.shape[0])
        outside = ~self.contains(pts)
        if not outside.any():
            return out
        if self._kdtree is None:
            from scipy.spatial import cKDTree
            self._kdtree = cKDTree(self.vertices)
        q = pts[outside]
        _, idx = self._kdtree.query(q)
        n = self.vertices.shape[0]
        best = np.full(q.shape[0], np.inf)
        for off in (-2, -1, 0, 1):
            a = self.vertices[(idx + off) % n]
            b = self.vertices[(idx + off + 1) % n]
            e = b - a
            ln2 = np.maximum((e * e).sum(axis=1), 1e-300)
            t = np.clip(((q - a) * e).sum(axis=1) / ln2, 0.0, 1.0)
            proj = a + t[:, None] * e
            best = np.minimum(best, np.hypot(q[:, 0] - proj[:, 0], q[:, 1] - proj[:, 1]))
        out[outside] = best
        return out

    def depth(self, pts) -> np.ndarray:
        pts = as_points(pts)
        inside = self.contains(pts)
        out = np.zeros(pts.shape[0])
        if not inside.any():
            return out
        if self._kdtree is None:
            from scipy.spatial import cKDTree
            self._kdtree = cKDTree(self.vertices)
        q = pts[inside]
        _, idx = self._kdtree.query(q)
        n = self.vertices.shape[0]
        best = np.full(q.shape[0], np.inf)
        for off in (-2, -1, 0, 1):
            a = self.vertices[(idx + off) % n]
            b = self.vertices[(idx + off + 1) % n]
            e = b - a
            ln2 = np.maximum((e * e).sum(axis=1), 1e-300)
            t = np.clip(((q - a) * e).sum(axis=1) / ln2, 0.0, 1.0)
            proj = a + t[:, None] * e
            best = np.minimum(best, np.hypot(q[:, 0] - proj[:, 0], q[:, 1] - proj[:, 1]))
        out[inside] = best
        return out

    def boundary_points(self, step: float) -> np.ndarray:
        if step >= self._max_edge:
            return self.vertices
        k = int(np.ceil(self._max_edge / step))
        a = self.vertices
        b = np.roll(self.vertices, -1, axis=0)
        t = np.arange(k) / k
        pts = a[None, :, :] + t[:, None, None] * (b - a)[None, :, :]
        return pts.reshape(-1, 2)

    def components(self):
        return [self]

    def __repr__(self):
        return f"RadialPolygon({self.thetas.shape[0]} rays)"


# ---- JSON round trip -------------------------------------------------------

def region_to_json(r) -> dict:
    if isinstance(r, ConvexPolygon):
        return {"type": "convex_polygon", "vertices": [[float(x), float(y)] for x, y in r.vertices]}
    if isinstance(r, TwoComponent):
        return {"type": "two_component",
                "first": region_to_json(r.first), "second": region_to_json(r.second)}
    if isinstance(r, PolarRegion):
        return {"type": "polar", "r_base": r.r_base,
                "segments": [[s[0], s[1], s[2], s[3]] for s in r.segments]}
    if isinstance(r, RasterRegion):
        rows = ["".join("1" if c else "0" for c in row) for row in r.grid]
        return {"type": "raster", "origin": [float(r.origin[0]), float(r.origin[1])],
                "cell_size": r.cell_size, "rows": rows}
    raise BadParams(f"cannot serialize region of type {type(r).__name__}")


def region_from_json(obj) -> object:
    if not isinstance(obj, dict) or "type" not in obj:
        raise BadParams("region JSON must be an object with a 'type' field")
    t = obj["type"]
    try:
        if t == "convex_polygon":
            return ConvexPolygon(obj["vertices"])
        if t == "two_component":
            return TwoComponent(region_from_json(obj["first"]), region_from_json(obj["second"]))
        if t == "polar":
            return PolarRegion(obj["r_base"], obj.get("segments", []))
        if t == "raster":
            rows = obj["rows"]
            grid = np.asarray([[c == "1" for c in row] for row in rows], dtype=bool)
            return RasterRegion(obj["origin"], obj["cell_size"], grid)
    except KeyError as exc:
        raise BadParams(f"region JSON missing field: {exc}") from exc
    raise BadParams(f"unknown region type: {t!r}")
