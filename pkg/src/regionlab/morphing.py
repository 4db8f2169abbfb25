"""Radial morphs between star-shaped regions and matched two-component pairs.

The standard morph fixes an interior center o, tabulates boundary radii of
the source p, target q and an enclosing window w along evenly spaced rays,
and moves each point along its ray:

  x <= p(theta):        f_t(x) = (1-t) x + t x q/p
  p(theta) < x < w:     f_t(x) = (1-t) x + t (q + (w-q)(x-p)/(w-p))
  x >= w(theta):        identity

(radial coordinates relative to o).  Each f_t is a homeomorphism of the
plane, f_0 = id, and f_1 maps the tabulated p onto the tabulated q, so the
supremum displacement t * max|q - p| upper-bounds the homeomorphism metric
of the ray-discretized pair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import ops
from .errors import (BadParams, CenterOutside, NoOverlap, NotContained,
                     PreconditionViolated)
from .regions import (ConvexPolygon, PolarRegion, RadialPolygon, TwoComponent,
                      as_points, _unit)

DEFAULT_RAYS = 4096


def ray_table(region, origin, thetas) -> np.ndarray:
    """Boundary radii of a star-shaped region about an interior origin."""
    o = as_points(origin)[0]
    if isinstance(region, ConvexPolygon):
        return region.ray_radii(o, thetas)
    if isinstance(region, PolarRegion):
        return region.ray_radii(o, thetas)
    if isinstance(region, RadialPolygon):
        if np.hypot(*(region.center - o)) > 1e-9 * (1.0 + region.diameter):
            raise BadParams("radial polygon tables need the same center")
        return region._crossing_radius(np.asarray(thetas, dtype=float) % (2.0 * np.pi))
    raise PreconditionViolated(
        f"no radial parameterization for {type(region).__name__}")


@dataclass
class StandardMorph:
    """Tabulated radial morph about a common interior center."""

    origin: np.ndarray
    thetas: np.ndarray
    r_src: np.ndarray
    r_tgt: np.ndarray
    r_win: np.ndarray

    def _interp(self, table, th):
        two_pi = 2.0 * np.pi
        grid = np.concatenate([self.thetas, [self.thetas[0] + two_pi]])
        vals = np.concatenate([table, [table[0]]])
        return np.interp(th % two_pi, grid, vals)

    def displacement(self, t: float) -> float:
        """Supremum of |f_t(x) - x| over the plane: attained on the source table."""
        return float(t) * float(np.abs(self.r_tgt - self.r_src).max())

    def map_points(self, t: float, pts) -> np.ndarray:
        pts = as_points(pts)
        v = pts - self.origin[None, :]
        x = np.hypot(v[:, 0], v[:, 1])
        th = np.arctan2(v[:, 1], v[:, 0])
        p = self._interp(self.r_src, th)
        q = self._interp(self.r_tgt, th)
        w = self._interp(self.r_win, th)
        inner = x <= p
        outer = x >= w
        mid = ~inner & ~outer
        newx = x.copy()
        newx[inner] = (1 - t) * x[inner] + t * x[inner] * q[inner] / p[inner]
        newx[mid] = (1 - t) * x[mid] + t * (
            q[mid] + (w[mid] - q[mid]) * (x[mid] - p[mid]) / (w[mid] - p[mid]))
        scale = np.ones_like(x)
        nz = x > 0
        scale[nz] = newx[nz] / x[nz]
        return self.origin[None, :] + v * scale[:, None]

    def frame(self, t: float) -> RadialPolygon:
        """Image of the tabulated source region at time t."""
        r = (1 - t) * self.r_src + t * self.r_tgt
        return RadialPolygon(self.origin, self.thetas, r)


def build_standard_morph(p, q, w, origin, rays: int = DEFAULT_RAYS,
                         extra_thetas=None) -> StandardMorph:
    """Tabulate a morph from p to q inside window w about an interior origin.

    Raises CenterOutside when the origin is not interior to all three regions
    and NotContained when a tabulated radius of p or q reaches the window.
    """
    o = as_points(origin)[0]
    for r in (p, q, w):
        if float(r.depth(o[None, :])[0]) <= 0.0:
            raise CenterOutside("morph center must be interior to p, q and w")
    thetas = 2.0 * np.pi * np.arange(rays) / rays
    if extra_thetas is not None and len(extra_thetas):
        extra = np.asarray(extra_thetas, dtype=float) % (2.0 * np.pi)
        thetas = np.unique(np.concatenate([thetas, extra]))
    rp = ray_table(p, o, thetas)
    rq = ray_table(q, o, thetas)
    rw = ray_table(w, o, thetas)
    if np.any(rp >= rw) or np.any(rq >= rw):
        raise NotContained("window must strictly contain source and target")
    if np.any(rp <= 0) or np.any(rq <= 0):
        raise CenterOutside("center must be interior; a ray radius vanished")
    return StandardMorph(o, thetas, rp, rq, rw)


def standard_morph_for_pair(p, q, rays: int = DEFAULT_RAYS) -> StandardMorph:
    """Pick a center and window automatically for a single-component pair."""
    if isinstance(p, ConvexPolygon) and isinstance(q, ConvexPolygon):
        inter = ops.clip_convex(p, q)
        if inter is None:
            raise NoOverlap("regions share no interior point; no common center")
        o, _ = ops.chebyshev_center(inter)
        hull = ops.convex_hull(p, q)
        w = ops.dilate(hull, 0.05 * hull.diameter)
        return build_standard_morph(p, q, w, o, rays)
    if isinstance(p, PolarRegion) and isinstance(q, PolarRegion):
        for r in (p, q):
            if not r.is_star_shaped():
                raise PreconditionViolated("detached wedges are not star-shaped")
        rmax = max(p._rmax, q._rmax)
        w = PolarRegion(1.05 * rmax)
        extra = np.concatenate([_segment_thetas(p), _segment_thetas(q)])
        return build_standard_morph(p, q, w, np.zeros(2), rays, extra_thetas=extra)
    # mixed star-shaped cases: the polar side pins the center at the origin
    if isinstance(p, PolarRegion) or isinstance(q, PolarRegion):
        polar = p if isinstance(p, PolarRegion) else q
        other = q if polar is p else p
        if not polar.is_star_shaped():
            raise PreconditionViolated("detached wedges are not star-shaped")
        if float(other.depth(np.zeros((1, 2)))[0]) <= 0.0:
            raise NoOverlap("origin is not interior to both regions")
        rmax = max(polar._rmax, float(np.abs(_region_extent(other))))
        w = PolarRegion(1.05 * rmax)
        return build_standard_morph(p, q, w, np.zeros(2), rays,
                                    extra_thetas=_segment_thetas(polar))
    raise PreconditionViolated(
        f"no automatic morph for {type(p).__name__} vs {type(q).__name__}")


def _segment_thetas(polar: PolarRegion) -> np.ndarray:
    """Interior angles of every wedge, so rays never skip a thin one."""
    out = []
    for a0, a1, _, _ in polar.segments:
        width = a1 - a0
        out.extend((a0, a0 + 0.5 * width, a0 + 0.999 * width))
    return np.asarray(out, dtype=float)


def _region_extent(r) -> float:
    x0, y0, x1, y1 = r.bbox()
    return float(np.sqrt(max(x0 * x0, x1 * x1) + max(y0 * y0, y1 * y1)))


def displacement_sup(m: StandardMorph, t: float) -> float:
    return m.displacement(t)


def morph_region(m: StandardMorph, t: float) -> RadialPolygon:
    if not 0.0 <= t <= 1.0:
        raise BadParams("morph time must lie in [0, 1]")
    return m.frame(t)


def morph_point(m: StandardMorph, t: float, pts) -> np.ndarray:
    if not 0.0 <= t <= 1.0:
        raise BadParams("morph time must lie in [0, 1]")
    return m.map_points(t, pts)


# ---- two-component pairs ------------------------------------------------------

def match_pieces(p: TwoComponent, q: TwoComponent):
    """Pair up components of two nearby two-component regions.

    Requires Hausdorff distance h below each inradius of p's parts and below
    half their separation; then the inball of each part, shrunk by h, lies
    inside exactly one part of q, which fixes the correspondence.
    """
    if not isinstance(p, TwoComponent) or not isinstance(q, TwoComponent):
        raise PreconditionViolated("piece matching is defined for two-component pairs")
    from .metrics import hausdorff
    h = hausdorff(p, q).value
    c_parts = p.components()
    q_parts = q.components()
    centers = []
    for c in c_parts:
        center, rho = ops.chebyshev_center(c)
        if h >= rho:
            raise PreconditionViolated(
                f"Hausdorff distance {h:.6g} >= inradius {rho:.6g}")
        centers.append(center)
    if h >= p.separation / 2.0:
        raise PreconditionViolated(
            f"Hausdorff distance {h:.6g} >= half separation {p.separation / 2:.6g}")
    hit = []
    for center in centers:
        inside = [bool(part.contains(center[None, :])[0]) for part in q_parts]
        if sum(inside) != 1:
            raise PreconditionViolated("piece correspondence is ambiguous")
        hit.append(inside.index(True))
    if hit[0] == hit[1]:
        raise PreconditionViolated("both inball centers landed in one target piece")
    return [(c_parts[0], q_parts[hit[0]]), (c_parts[1], q_parts[hit[1]])]


def build_piece_morph(c: ConvexPolygon, e: ConvexPolygon,
                      rays: int = DEFAULT_RAYS) -> StandardMorph:
    """Standard morph between matched convex pieces inside a padded hull."""
    inter = ops.clip_convex(c, e)
    if inter is None:
        raise NoOverlap("matched pieces share no interior point")
    o, _ = ops.chebyshev_center(inter)
    hull = ops.convex_hull(c, e)
    w = ops.dilate(hull, 0.05 * hull.diameter)
    return build_standard_morph(c, e, w, o, rays)


@dataclass
class TwoComponentMorph:
    """Two independent piece morphs inside disjoint dilated-hull envelopes."""

    morphs: tuple
    envelopes: tuple
    eps: float

    def displacement(self, t: float) -> float:
        return max(m.displacement(t) for m in self.morphs)

    def map_points(self, t: float, pts) -> np.ndarray:
        pts = as_points(pts)
        out = pts.copy()
        for m, env in zip(self.morphs, self.envelopes):
            sel = env.contains(pts)
            if sel.any():
                out[sel] = m.map_points(t, pts[sel])
        return out

    def frame(self, t: float):
        return [m.frame(t) for m in self.morphs]


def two_component_morph(p: TwoComponent, q: TwoComponent,
                        rays: int = DEFAULT_RAYS) -> TwoComponentMorph:
    """Glue piece morphs inside disjoint envelopes, identity elsewhere.

    With h the Hausdorff distance and eps = separation(p) - 2h > 0, each
    matched piece pair lies in the h-dilation of its p-piece, so the two
    piece hulls stay eps apart and their 0.49*eps dilations are disjoint.
    """
    pieces = match_pieces(p, q)
    from .metrics import hausdorff
    h = hausdorff(p, q).value
    eps = p.separation - 2.0 * h
    if eps <= 0:
        raise PreconditionViolated("separation does not exceed twice the Hausdorff distance")
    envelopes = []
    morphs = []
    for c, e in pieces:
        hull = ops.convex_hull(c, e)
        env = ops.dilate(hull, 0.49 * eps)
        inter = ops.clip_convex(c, e)
        if inter is None:
            raise NoOverlap("matched pieces share no interior point")
        o, _ = ops.chebyshev_center(inter)
        morphs.append(build_standard_morph(c, e, env, o, rays))
        envelopes.append(env)
    from .regions import convex_pair_distance
    if convex_pair_distance(envelopes[0], envelopes[1]) <= 0:
        raise PreconditionViolated("piece envelopes overlap; construction invalid")
    return TwoComponentMorph(tuple(morphs), tuple(envelopes), eps)


def interpolated_steps(p, q, k: int, rays: int = DEFAULT_RAYS):
    """Finite morph chain: images of p at times i/k for i = 0..k."""
    if k < 1:
        raise BadParams("need at least one step")
    m = standard_morph_for_pair(p, q, rays)
    return [m.frame(i / k) for i in range(k + 1)]
