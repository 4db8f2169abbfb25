"""Randomized audits of the geometric bounds used by the morphing theory.

Each audit draws random convex pairs, skips draws that fail the bound's
hypothesis (skips are reported), and verifies the inequality with an explicit
slack for the numerical error of the quantities involved.  A violation means
the implementation contradicts the bound, not that the draw was unlucky.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import metrics, morphing, ops
from .errors import NoOverlap, PreconditionViolated
from .regions import ConvexPolygon
from .transport import power_fn

AUDIT_STEP_FRACTION = 1.0 / 512.0


@dataclass
class AuditResult:
    name: str
    trials: int
    checked: int
    skipped: int
    violations: int
    worst_margin: float
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.violations == 0

    def to_dict(self):
        return {"name": self.name, "trials": self.trials, "checked": self.checked,
                "skipped": self.skipped, "violations": self.violations,
                "worst_margin": self.worst_margin, "note": self.note}


def _random_pair(rng, amp_lo=0.01, amp_hi=0.15):
    scale = float(rng.uniform(0.5, 2.0))
    center = rng.uniform(-1.0, 1.0, 2)
    npts = int(rng.integers(6, 14))
    pts = center + scale * rng.normal(size=(npts * 2, 2)) * 0.5
    p = ops.hull_of_points(pts)
    amp = float(rng.uniform(amp_lo, amp_hi)) * p.diameter
    jitter = rng.normal(size=p.vertices.shape) * amp
    shift = rng.normal(size=2) * amp * 0.5
    q = ops.hull_of_points(p.vertices + jitter + shift[None, :])
    return p, q


def audit_inball(trials: int = 100, seed: int = 0) -> AuditResult:
    """H(P, Q) = h and B(o, r) in P imply B(o, r - h) in Q."""
    rng = np.random.default_rng(seed)
    checked = skipped = violations = 0
    worst = np.inf
    while checked < trials and skipped < 10 * trials:
        p, q = _random_pair(rng)
        step = p.diameter * AUDIT_STEP_FRACTION
        hv = metrics.hausdorff(p, q, step=step)
        o, r = ops.chebyshev_center(p)
        if hv.value >= r:
            skipped += 1
            continue
        checked += 1
        depth = float(q.depth(o[None, :])[0])
        slack = 2.0 * hv.error + 1e-9
        margin = depth - (r - hv.value) + slack
        worst = min(worst, margin)
        if margin < 0:
            violations += 1
    return AuditResult("inball", trials, checked, skipped, violations,
                       float(worst) if checked else float("nan"))


def audit_shells(trials: int = 100, seed: int = 0, samples: int = 64) -> AuditResult:
    """With h the dual Hausdorff distance, the symmetric difference lies in
    the width-h shells of P: interior points at depth <= h, exterior points
    at distance <= h."""
    rng = np.random.default_rng(seed)
    checked = skipped = violations = 0
    worst = np.inf
    while checked < trials and skipped < 10 * trials:
        p, q = _random_pair(rng)
        step = p.diameter * AUDIT_STEP_FRACTION
        hv = metrics.dual_hausdorff(p, q, step=step)
        bx = _union_bbox(p.bbox(), q.bbox())
        pts = _sample_sym_diff(rng, p, q, bx, samples)
        if pts is None:
            skipped += 1
            continue
        checked += 1
        in_p = p.contains(pts)
        slack = hv.error + 1e-9
        vals = np.where(in_p, p.depth(pts), p.distance(pts))
        margin = float((hv.value + slack - vals).min())
        worst = min(worst, margin)
        if margin < 0:
            violations += 1
    return AuditResult("shells", trials, checked, skipped, violations,
                       float(worst) if checked else float("nan"))


def _union_bbox(a, b):
    return (min(a[0], b[0]), min(a[1], b[1]), max(a[2], b[2]), max(a[3], b[3]))


def _sample_sym_diff(rng, p, q, bx, n):
    x0, y0, x1, y1 = bx
    got = []
    for _ in range(50):
        pts = rng.random((max(256, 4 * n), 2))
        pts[:, 0] = x0 + pts[:, 0] * (x1 - x0)
        pts[:, 1] = y0 + pts[:, 1] * (y1 - y0)
        keep = pts[p.contains(pts) ^ q.contains(pts)]
        got.append(keep)
        if sum(g.shape[0] for g in got) >= n:
            return np.vstack(got)[:n]
    stacked = np.vstack(got)
    return stacked if stacked.shape[0] else None


def audit_transport_bound(trials: int = 100, seed: int = 0, n_ot: int = 256) -> AuditResult:
    """W_psi(P, Q) is at most psi_inv(4 a psi(diam) / area(P)) for symmetric
    difference area a < area(P) / 2, up to sampling error."""
    rng = np.random.default_rng(seed)
    gen = power_fn(1)
    checked = skipped = violations = 0
    worst = np.inf
    while checked < trials and skipped < 10 * trials:
        p, q = _random_pair(rng, amp_lo=0.02, amp_hi=0.25)
        a = metrics.sym_diff_area(p, q).value
        if a >= 0.5 * p.area:
            skipped += 1
            continue
        checked += 1
        d = ops.convex_hull(p, q).diameter
        bound = float(gen.inverse(4.0 * a * gen(d) / p.area))
        w = metrics.wasserstein(p, q, gen, n=n_ot, seed=seed + 7 * checked)
        margin = bound + 3.0 * w.error - w.value
        worst = min(worst, margin)
        if margin < 0:
            violations += 1
    return AuditResult("transport_bound", trials, checked, skipped, violations,
                       float(worst) if checked else float("nan"))


def audit_displacement(trials: int = 100, seed: int = 0) -> AuditResult:
    """The standard morph moves no point farther than rmax h / (r - h) when
    the Hausdorff distance h stays below half the center depth r."""
    rng = np.random.default_rng(seed)
    checked = skipped = violations = 0
    worst = np.inf
    while checked < trials and skipped < 10 * trials:
        p, q = _random_pair(rng, amp_hi=0.08)
        step = p.diameter * AUDIT_STEP_FRACTION
        hv = metrics.hausdorff(p, q, step=step)
        try:
            m = morphing.standard_morph_for_pair(p, q, rays=1024)
        except (NoOverlap, PreconditionViolated):
            skipped += 1
            continue
        r = float(p.depth(m.origin[None, :])[0])
        h = hv.value + hv.error
        if not (r > 0 and h < r / 2):
            skipped += 1
            continue
        checked += 1
        rmax = float(max(m.r_src.max(), m.r_tgt.max()))
        bound = rmax * h / (r - h)
        disp = m.displacement(1.0)
        margin = bound + 1e-9 - disp
        worst = min(worst, margin)
        if margin < 0:
            violations += 1
    return AuditResult("displacement", trials, checked, skipped, violations,
                       float(worst) if checked else float("nan"))


def audit_hull_h1(trials: int = 100, seed: int = 0) -> AuditResult:
    """Against a convex base, the far side of the hull of a union is the far
    side of the union: H1(hull(P u Q), P) = H1(Q, P)."""
    rng = np.random.default_rng(seed)
    checked = violations = 0
    worst = np.inf
    for _ in range(trials):
        p, q = _random_pair(rng, amp_lo=0.05, amp_hi=0.4)
        step = p.diameter * AUDIT_STEP_FRACTION
        hull = ops.convex_hull(p, q)
        lhs = metrics.h1(hull, p, step=step)
        rhs = metrics.h1(q, p, step=step)
        checked += 1
        slack = 2.0 * (lhs.error + rhs.error) + 1e-9
        gap = abs(lhs.value - rhs.value)
        margin = slack - gap
        worst = min(worst, margin)
        if margin < 0:
            violations += 1
    return AuditResult("hull_h1", trials, checked, 0, violations,
                       float(worst) if checked else float("nan"))


AUDITS = {
    "inball": audit_inball,
    "shells": audit_shells,
    "transport_bound": audit_transport_bound,
    "displacement": audit_displacement,
    "hull_h1": audit_hull_h1,
}


def bound_audits(trials: int = 100, seed: int = 0, names=None) -> list:
    """Run the named audits (all by default); returns a list of AuditResult."""
    picked = names or sorted(AUDITS)
    out = []
    for name in picked:
        if name not in AUDITS:
            from .errors import UnknownName
            raise UnknownName(f"unknown audit {name!r}; known: {', '.join(sorted(AUDITS))}")
        out.append(AUDITS[name](trials=trials, seed=seed))
    return out
