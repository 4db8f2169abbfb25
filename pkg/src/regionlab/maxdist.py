"""Branch-and-bound maximization of 1-Lipschitz distance-like fields.

Used for one-sided Hausdorff suprema and their complement-side variants.
Cells carry a certified upper bound f(center) + rho + eval_err where rho is
the half diagonal; lower bounds come from admissible evaluation points, so
the reported error is an honest bracket width, not a heuristic.
"""

from __future__ import annotations

import numpy as np

from .regions import ConvexPolygon, PolarRegion, RadialPolygon, TwoComponent


class SupResult:
    __slots__ = ("value", "error", "argmax", "rounds", "converged")

    def __init__(self, value, error, argmax, rounds, converged):
        self.value = float(value)
        self.error = float(error)
        self.argmax = argmax
        self.rounds = int(rounds)
        self.converged = bool(converged)

    def __repr__(self):
        return f"SupResult(value={self.value:.6g}, error={self.error:.3g})"


def sup_field(
    f,
    bbox,
    tol: float,
    *,
    admissible=None,
    prune_zero=None,
    prune_out=None,
    seeds=None,
    eval_err: float = 0.0,
    init_grid: int = 32,
    split_batch: int = 1024,
    max_rounds: int = 200,
) -> SupResult:
    """Maximize f over admissible points of a box, to absolute tolerance tol.

    f(pts)            vectorized field values, 1-Lipschitz, >= 0
    admissible(pts)   mask of points allowed as lower-bound witnesses
    prune_zero(pts, rho)  mask of cell centers whose rho-cell has f identically 0
    prune_out(pts, rho)   mask of cell centers whose rho-cell contains no
                          admissible point (safe to discard entirely)
    seeds             admissible points evaluated up front
    eval_err          additive evaluation error of f (raster-backed fields)
    """
    x0, y0, x1, y1 = bbox
    span = max(x1 - x0, y1 - y0)
    if span <= 0:
        return SupResult(0.0, 0.0, np.array([x0, y0]), 0, True)
    tol = max(tol, 1e-12)

    lb = 0.0
    argmax = np.array([x0, y0])

    def admit_and_score(pts):
        nonlocal lb, argmax
        vals = f(pts)
        if admissible is not None:
            ok = admissible(pts)
        else:
            ok = np.ones(pts.shape[0], dtype=bool)
        if ok.any():
            vv = np.where(ok, vals, -np.inf)
            k = int(np.argmax(vv))
            cand = float(vv[k]) - eval_err
            if cand > lb:
                lb = cand
                argmax = pts[k].copy()
        return vals

    if seeds is not None and len(seeds):
        admit_and_score(np.asarray(seeds, dtype=float))

    # initial grid of square cells covering the box
    n0 = init_grid
    h = span / (2.0 * n0)
    cxs = np.linspace(x0 + h, x0 + span - h, n0)
    cys = np.linspace(y0 + h, y0 + span - h, n0)
    gx, gy = np.meshgrid(cxs, cys)
    centers = np.stack([gx.ravel(), gy.ravel()], axis=1)
    halfs = np.full(centers.shape[0], h)

    vals = admit_and_score(centers)
    rounds = 0
    converged = False
    ub_final = lb
    while True:
        rho = halfs * np.sqrt(2.0)
        ub = vals + rho + eval_err
        if prune_zero is not None:
            z = prune_zero(centers, rho)
            ub = np.where(z, 0.0, ub)
        if prune_out is not None:
            o = prune_out(centers, rho)
            ub = np.where(o, -np.inf, ub)
        keep = ub > lb + tol
        centers = centers[keep]
        halfs = halfs[keep]
        vals = vals[keep]
        ub = ub[keep]
        if centers.shape[0] == 0:
            # every cell was discarded at ub <= lb + tol, so sup <= lb + tol
            converged = True
            ub_final = lb + tol
            break
        ub_final = float(ub.max())
        # the bracket cannot close past the evaluation noise, so stop once
        # only that noise is left
        if ub_final <= lb + tol + 2.0 * eval_err:
            converged = True
            break
        rounds += 1
        if rounds > max_rounds:
            break
        # split the most promising cells into quadrants
        order = np.argsort(-ub)
        top = order[:split_batch]
        rest = order[split_batch:]
        c = centers[top]
        hh = halfs[top] * 0.5
        off = np.array([[1, 1], [1, -1], [-1, 1], [-1, -1]], dtype=float)
        children = (c[:, None, :] + off[None, :, :] * hh[:, None, None]).reshape(-1, 2)
        child_h = np.repeat(hh, 4)
        child_vals = admit_and_score(children)
        centers = np.vstack([centers[rest], children])
        halfs = np.concatenate([halfs[rest], child_h])
        vals = np.concatenate([vals[rest], child_vals])
    # one extra eval_err covers witness points admitted within query slack
    err = max(0.0, ub_final - lb) + eval_err
    return SupResult(lb, err, argmax, rounds, converged)


def _polygon_vertices(r):
    """Vertex arrays whose filled polygons make up the closure, else None."""
    if isinstance(r, (ConvexPolygon, RadialPolygon)):
        return [r.vertices]
    if isinstance(r, TwoComponent):
        return [r.first.vertices, r.second.vertices]
    return None


def _convex_distance_field(q) -> bool:
    """True when dist(., closure(q)) is a convex function of the point."""
    if isinstance(q, ConvexPolygon):
        return True
    return isinstance(q, PolarRegion) and not q.segments


def sup_boundary_to_region(p, q, tol: float) -> SupResult:
    """sup over closure(p) of dist(x, closure(q)): the one-sided Hausdorff term."""
    chunks = _polygon_vertices(p)
    if chunks is not None and _convex_distance_field(q):
        # a convex field on a filled polygon peaks at a vertex, so the sup
        # is an exact finite maximum
        pts = np.vstack(chunks)
        d = q.distance(pts)
        k = int(np.argmax(d))
        return SupResult(float(d[k]), 0.0, pts[k].copy(), 0, True)
    bx = p.bbox()
    eval_err = getattr(q, "query_error", 0.0)
    coarse = max(p.diameter, 1e-9) / 256.0
    seeds = p.boundary_points(coarse)

    def f(pts):
        return q.distance(pts)

    def prune_zero(pts, rho):
        return q.depth(pts) >= rho + eval_err

    def prune_out(pts, rho):
        return p.distance(pts) > rho + getattr(p, "query_error", 0.0)

    return sup_field(f, bx, tol, admissible=p.contains, prune_zero=prune_zero,
                     prune_out=prune_out, seeds=seeds, eval_err=eval_err)


def sup_depth_outside(p, q, tol: float) -> SupResult:
    """sup over points not interior to p of depth_q: the complement-side term.

    Equals the one-sided Hausdorff distance from complement(p) to
    complement(q) for bounded regions.
    """
    bx = q.bbox()
    eval_err = getattr(q, "query_error", 0.0)
    p_err = getattr(p, "query_error", 0.0)
    coarse = max(q.diameter, 1e-9) / 256.0
    seeds_q = q.boundary_points(coarse)
    seeds_p = p.boundary_points(max(p.diameter, 1e-9) / 256.0)
    seeds = np.vstack([seeds_q, seeds_p])

    def f(pts):
        return q.depth(pts)

    def admissible(pts):
        return p.depth(pts) <= p_err

    def prune_zero(pts, rho):
        return q.distance(pts) > rho + eval_err

    def prune_out(pts, rho):
        # the whole cell lies strictly inside p, so no complement point in it
        return p.depth(pts) >= rho + p_err

    return sup_field(f, bx, tol, admissible=admissible, prune_zero=prune_zero,
                     prune_out=prune_out, seeds=seeds, eval_err=eval_err + p_err)
