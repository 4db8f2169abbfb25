"""Region metrics: Hausdorff family, symmetric-difference area, sampled
Wasserstein, morph-displacement upper bound, perimeter-augmented distance.

Every metric returns a MetricValue carrying the computed value and an honest
error estimate: a branch-and-bound bracket for the sup-based metrics, zero for
exact area paths, and a sampling-floor estimate for Wasserstein.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import ops
from .errors import BadParams, PreconditionViolated
from .maxdist import sup_boundary_to_region, sup_depth_outside
from .regions import ConvexPolygon, PolarRegion, RadialPolygon, RasterRegion
from .transport import MulhollandFn, WeightedPoints, wasserstein_discrete

DEFAULT_STEP_FRACTION = 1.0 / 2048.0
DEFAULT_OT_SAMPLES = 1024


@dataclass
class MetricValue:
    value: float
    error: float
    stable: bool | None = None
    detail: dict = field(default_factory=dict)

    def __float__(self):
        return self.value


def _default_tol(p, q, step):
    if step is not None:
        if step <= 0:
            raise BadParams("step must be positive")
        return step
    return max(p.diameter, q.diameter, 1e-9) * DEFAULT_STEP_FRACTION


def h1(p, q, step: float | None = None) -> MetricValue:
    """One-sided sup distance: sup over closure(p) of dist(x, closure(q))."""
    tol = _default_tol(p, q, step)
    res = sup_boundary_to_region(p, q, tol)
    return MetricValue(res.value, res.error, detail={"argmax": res.argmax.tolist()})


def hausdorff(p, q, step: float | None = None) -> MetricValue:
    """Symmetric Hausdorff distance between closures."""
    tol = _default_tol(p, q, step)
    a = sup_boundary_to_region(p, q, tol)
    b = sup_boundary_to_region(q, p, tol)
    res = a if a.value >= b.value else b
    return MetricValue(max(a.value, b.value), max(a.error, b.error),
                       detail={"argmax": res.argmax.tolist()})


def dual_hausdorff(p, q, step: float | None = None) -> MetricValue:
    """max of the Hausdorff distances between the regions and between their
    complements.

    For bounded regions the complement side reduces to interior depths:
      sup over x outside p of depth_q(x)  and symmetrically,
    which keeps the computation on a bounded window.
    """
    tol = _default_tol(p, q, step)
    parts = [
        sup_boundary_to_region(p, q, tol),
        sup_boundary_to_region(q, p, tol),
        sup_depth_outside(p, q, tol),
        sup_depth_outside(q, p, tol),
    ]
    vals = [r.value for r in parts]
    errs = [r.error for r in parts]
    k = int(np.argmax(vals))
    return MetricValue(vals[k], max(errs), detail={"argmax": parts[k].argmax.tolist()})


def _polygonal_parts(r):
    parts = r.components()
    if all(isinstance(c, ConvexPolygon) for c in parts):
        return parts
    return None


def sym_diff_area(p, q, cells: int = ops.DEFAULT_CELLS) -> MetricValue:
    """Area of the symmetric difference.

    Exact for pairs of polygonal regions (by convex clipping) and for pairs of
    polar regions (by angular sweep); raster fallback otherwise with an error
    bound from the perimeters and one grid refinement.
    """
    if p is q:
        return MetricValue(0.0, 0.0)
    pa = _polygonal_parts(p)
    qa = _polygonal_parts(q)
    if pa is not None and qa is not None:
        inter = sum(c.area for a in pa for b in qa
                    for c in [ops.clip_convex(a, b)] if c is not None)
        return MetricValue(p.area + q.area - 2.0 * inter, 0.0)
    if isinstance(p, PolarRegion) and isinstance(q, PolarRegion):
        inter = ops._polar_intersection_area(p, q)
        return MetricValue(p.area + q.area - 2.0 * inter, 0.0)
    sd = ops.sym_diff(p, q, cells)
    err = (p.perimeter + q.perimeter) * sd.cell_size
    return MetricValue(sd.area, err)


def wasserstein(p, q, f: MulhollandFn, n: int = DEFAULT_OT_SAMPLES,
                seed: int = 0, floor: float | None = None) -> MetricValue:
    """Empirical Wasserstein distance between uniform measures on p and q.

    Solves the exact assignment on n uniform samples per side, re-solves at
    n//2 for a stability check, and (unless supplied) measures the sampling
    floor as the self-distance of q under two fresh sample draws.  The error
    estimate is max(floor, half the n-vs-n/2 gap); `stable` flags a gap within
    5 percent.
    """
    if n < 8:
        raise BadParams("need at least 8 samples per side")
    xs = WeightedPoints.uniform(ops.sample_uniform(p, n, seed))
    ys = WeightedPoints.uniform(ops.sample_uniform(q, n, seed + 1))
    w_n = wasserstein_discrete(xs, ys, f)
    xs2 = WeightedPoints.uniform(ops.sample_uniform(p, n // 2, seed + 4))
    ys2 = WeightedPoints.uniform(ops.sample_uniform(q, n // 2, seed + 5))
    w_half = wasserstein_discrete(xs2, ys2, f)
    if floor is None:
        qa = WeightedPoints.uniform(ops.sample_uniform(q, n, seed + 2))
        qb = WeightedPoints.uniform(ops.sample_uniform(q, n, seed + 3))
        floor = wasserstein_discrete(qa, qb, f)
    gap = abs(w_n - w_half)
    stable = gap <= 0.05 * max(w_n, w_half, 1e-12)
    err = max(float(floor), 0.5 * gap)
    return MetricValue(w_n, err, stable=stable,
                       detail={"n": n, "w_half": w_half, "floor": float(floor)})


def wasserstein_floor(q, f: MulhollandFn, n: int = DEFAULT_OT_SAMPLES,
                      seed: int = 0) -> float:
    """Self-distance of q under two independent n-point samples."""
    qa = WeightedPoints.uniform(ops.sample_uniform(q, n, seed + 2))
    qb = WeightedPoints.uniform(ops.sample_uniform(q, n, seed + 3))
    return wasserstein_discrete(qa, qb, f)


def homeo_upper_bound(p, q, rays: int = 4096) -> MetricValue:
    """Supremum displacement of the standard radial morph from p to q.

    An upper bound for the homeomorphism metric on the ray-discretized pair:
    exact for the constructed morph, infinite when the component counts
    differ (no morph of this family exists), NoOverlap for disjoint
    single-component pairs.
    """
    from . import morphing
    np_parts = len(p.components())
    nq_parts = len(q.components())
    if np_parts != nq_parts:
        return MetricValue(np.inf, 0.0, detail={"reason": "component count differs"})
    if np_parts == 2:
        pieces = morphing.match_pieces(p, q)
        worst = 0.0
        for a, b in pieces:
            m = morphing.build_piece_morph(a, b, rays=rays)
            worst = max(worst, morphing.displacement_sup(m, 1.0))
        return MetricValue(worst, 0.0)
    m = morphing.standard_morph_for_pair(p, q, rays=rays)
    return MetricValue(morphing.displacement_sup(m, 1.0), 0.0)


def perimeter_augmented(p, q, step: float | None = None) -> MetricValue:
    """dual_hausdorff plus the absolute perimeter difference.

    Requires types with exact perimeters (polygonal or polar); rasters with
    their staircase perimeters are rejected.
    """
    for r in (p, q):
        if isinstance(r, (RasterRegion, RadialPolygon)):
            raise PreconditionViolated(
                "perimeter metric needs polygonal or polar inputs")
    base = dual_hausdorff(p, q, step)
    return MetricValue(base.value + abs(p.perimeter - q.perimeter), base.error,
                       detail={"dual_hausdorff": base.value})


# ---- registry used by the analyzer and the CLI --------------------------------

@dataclass(frozen=True)
class MetricSpec:
    """A named metric: `kind` selects the family and `generator` the psi."""

    name: str
    kind: str                      # one of H1, H, Hd, V, W, M, PM
    generator: MulhollandFn | None = None

    @property
    def uses_sampling(self) -> bool:
        return self.kind == "W"

    def evaluate(self, p, q, *, step=None, n=DEFAULT_OT_SAMPLES, seed=0,
                 floor=None, cells=ops.DEFAULT_CELLS) -> MetricValue:
        if self.kind == "H1":
            return h1(p, q, step)
        if self.kind == "H":
            return hausdorff(p, q, step)
        if self.kind == "Hd":
            return dual_hausdorff(p, q, step)
        if self.kind == "V":
            return sym_diff_area(p, q, cells)
        if self.kind == "W":
            return wasserstein(p, q, self.generator, n=n, seed=seed, floor=floor)
        if self.kind == "M":
            return homeo_upper_bound(p, q)
        if self.kind == "PM":
            return perimeter_augmented(p, q, step)
        raise BadParams(f"unknown metric kind {self.kind!r}")


def metric_by_name(token: str) -> MetricSpec:
    """Parse metric names: H1, H, Hd, V, M, PM, W1, W2, Wp:<p>."""
    from .transport import parse_generator
    t = token.strip()
    u = t.upper()
    if u == "H1":
        return MetricSpec("H1", "H1")
    if u == "H":
        return MetricSpec("H", "H")
    if u == "HD":
        return MetricSpec("Hd", "Hd")
    if u == "V":
        return MetricSpec("V", "V")
    if u == "M":
        return MetricSpec("M", "M")
    if u == "PM":
        return MetricSpec("PM", "PM")
    if u.startswith("W"):
        gen = parse_generator(t)
        label = {"x": "W1", "x^2": "W2"}.get(gen.name, f"Wp:{gen.power:g}")
        return MetricSpec(label, "W", gen)
    raise BadParams(f"unknown metric name: {token!r}")
