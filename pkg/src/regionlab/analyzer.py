"""Convergence analysis of region histories under different metrics.

A track evaluates m(phi(t_j), phi(0)) along a geometric time schedule (or an
index list for integer families) and classifies the tail:

  ConvergesToZero  values collapse relative to their start and end below a
                   tolerance tied to the per-sample error estimates
  Diverges         strictly increasing tail, final value 10x the start
  BoundedAway      every value at or above tolerance, flat last three
  Inconclusive     anything else

Sampled-Wasserstein tracks get a slower schedule and a resolution guard: once
the n versus n/2 solver values disagree beyond both a relative band and the
sampling floor, the remaining (finer) times are unresolvable at this sample
count and the track is truncated there.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import ops
from .errors import BadParams, PreconditionViolated
from .histories import History, SequenceFamily, catalog
from .metrics import (MetricSpec, MetricValue, dual_hausdorff, metric_by_name,
                      wasserstein_floor)
from .regions import ConvexPolygon, RasterRegion

VERDICTS = ("ConvergesToZero", "Diverges", "BoundedAway", "Inconclusive")

# verdict rule constants; chosen so every catalog witness classifies with
# margin against the measured sampling floors
TOL_FRACTION = 0.15
ERR_MULT = 2.0
DIVERGE_FACTOR = 10.0
MIN_SAMPLES = 4

# sampled-W resolution guard: truncate once |W_n - W_{n/2}| exceeds both
W_TRIP_REL = 0.25
W_TRIP_FLOOR_MULT = 3.0

TRACK_STEP_FRACTION = 1.0 / 1024.0


@dataclass(frozen=True)
class Schedule:
    """Geometric time schedule t_j = t0 * ratio**j, j = 0..steps-1."""

    t0: float
    ratio: float
    steps: int

    def __post_init__(self):
        if not (self.t0 > 0 and 0 < self.ratio < 1):
            raise BadParams("need t0 > 0 and ratio in (0, 1)")
        if self.steps < MIN_SAMPLES:
            raise BadParams(f"need at least {MIN_SAMPLES} steps")

    def times(self):
        return [self.t0 * self.ratio ** j for j in range(self.steps)]


def default_schedule(h: History, spec: MetricSpec) -> Schedule:
    """Metric-aware defaults: sampled-W tracks decay slower but longer."""
    if spec.uses_sampling:
        return Schedule(0.8 * h.t_max, 0.75, 12)
    return Schedule(0.8 * h.t_max, 0.5, 10)


@dataclass
class TrackSample:
    t: float
    value: float
    error: float
    stable: bool | None = None
    resolution_limited: bool = False

    def to_dict(self):
        return {"t": self.t, "value": self.value, "error": self.error,
                "stable": self.stable, "resolution_limited": self.resolution_limited}


@dataclass
class ConvergenceReport:
    history: str
    metric: str
    schedule: dict
    samples: list
    verdict: str
    tol: float
    notes: str = ""

    @property
    def values(self):
        return [s.value for s in self.samples if not s.resolution_limited]

    def to_dict(self):
        return {"history": self.history, "metric": self.metric,
                "schedule": self.schedule,
                "samples": [s.to_dict() for s in self.samples],
                "verdict": self.verdict, "tol": self.tol, "notes": self.notes}


def classify_track(values, errors) -> tuple:
    """Apply the verdict rules; returns (verdict, tol, notes)."""
    v = np.asarray(values, dtype=float)
    e = np.asarray(errors, dtype=float)
    if v.shape[0] < MIN_SAMPLES:
        return ("Inconclusive", float("nan"),
                f"only {v.shape[0]} usable samples, need {MIN_SAMPLES}")
    finite = np.isfinite(v)
    if not finite.all():
        if not finite.any() or np.isinf(v[-1]) and np.isinf(v[0]):
            return ("BoundedAway", float("inf"),
                    "metric is infinite along the track (no construction exists)")
        return ("Inconclusive", float("nan"), "mixed finite and infinite values")
    v0 = float(v[0])
    tol = max(TOL_FRACTION * v0, ERR_MULT * float(np.median(e)))
    decreasing = bool(np.all(np.diff(v) < 0))
    tail_small = bool(np.all(v[-3:] < tol))
    if v[-1] <= 0.5 * v0 and (tail_small or
                              (decreasing and v[-1] < tol and v[-1] <= 0.5 * v[-3])):
        return ("ConvergesToZero", tol, "")
    if bool(np.all(v < tol)):
        return ("ConvergesToZero", tol,
                "track sits below the sampling floor throughout")
    if bool(np.all(np.diff(v[-3:]) > 0)) and v[-1] > DIVERGE_FACTOR * v0:
        return ("Diverges", tol, "")
    # rising tracks that have not hit the divergence factor are still bounded away
    if bool(np.all(v[-3:] >= tol)) and v[-1] > 0.5 * v0:
        return ("BoundedAway", tol, "")
    return ("Inconclusive", tol, "no verdict rule matched")


def _eval_samples(h, spec: MetricSpec, params, seed: int, n_ot: int,
                  step_fraction: float, cache=None):
    """Evaluate the metric along the parameter list with the W guard."""
    limit = h.limit
    samples = []
    floor = None
    if spec.uses_sampling:
        floor = wasserstein_floor(limit, spec.generator, n=n_ot, seed=seed + 91)
    for j, t in enumerate(params):
        region = h.eval(t)
        key = (h.name, spec.name, float(t), seed, n_ot)
        mv = None if cache is None else cache.get(key)
        if mv is None:
            step = max(region.diameter, limit.diameter) * step_fraction
            mv = spec.evaluate(region, limit, step=step, n=n_ot,
                               seed=seed + 101 * j, floor=floor)
            if cache is not None:
                cache[key] = mv
        sample = TrackSample(float(t), mv.value, mv.error, mv.stable)
        if spec.uses_sampling:
            gap = abs(mv.value - mv.detail["w_half"])
            trip = gap > max(W_TRIP_REL * max(mv.value, mv.detail["w_half"]),
                             W_TRIP_FLOOR_MULT * floor)
            if trip:
                sample.resolution_limited = True
                samples.append(sample)
                break
        samples.append(sample)
    return samples


def _finish_report(h, spec, sched_desc, samples) -> ConvergenceReport:
    usable = [s for s in samples if not s.resolution_limited]
    verdict, tol, notes = classify_track([s.value for s in usable],
                                         [s.error for s in usable])
    if len(usable) < len(samples):
        extra = (f"truncated at t={samples[-1].t:g}: sample count cannot "
                 f"resolve the measure there")
        notes = f"{notes}; {extra}" if notes else extra
    return ConvergenceReport(h.name, spec.name, sched_desc, samples,
                             verdict, float(tol) if tol == tol else float("nan"),
                             notes)


def limit_estimate(h: History, metric, schedule: Schedule | None = None, *,
                   seed: int = 0, n_ot: int = 1024,
                   step_fraction: float = TRACK_STEP_FRACTION,
                   cache=None) -> ConvergenceReport:
    """Convergence track of a continuous history toward its limit."""
    spec = metric if isinstance(metric, MetricSpec) else metric_by_name(metric)
    if isinstance(h, SequenceFamily):
        return sequence_limit(h, spec, seed=seed, n_ot=n_ot,
                              step_fraction=step_fraction, cache=cache)
    if schedule is None:
        schedule = default_schedule(h, spec)
    if schedule.t0 > h.t_max:
        raise BadParams(f"schedule starts at {schedule.t0:g} beyond t_max={h.t_max:g}")
    samples = _eval_samples(h, spec, schedule.times(), seed, n_ot,
                            step_fraction, cache)
    sched = {"kind": "geometric", "t0": schedule.t0, "ratio": schedule.ratio,
             "steps": schedule.steps}
    return _finish_report(h, spec, sched, samples)


def sequence_limit(fam: SequenceFamily, metric, k_list=None, *,
                   seed: int = 0, n_ot: int = 1024,
                   step_fraction: float = TRACK_STEP_FRACTION,
                   cache=None) -> ConvergenceReport:
    """Convergence track of an integer-indexed family toward its limit."""
    spec = metric if isinstance(metric, MetricSpec) else metric_by_name(metric)
    ks = list(k_list) if k_list is not None else list(fam.k_list)
    if len(ks) < MIN_SAMPLES:
        raise BadParams(f"need at least {MIN_SAMPLES} indices")
    samples = _eval_samples(fam, spec, ks, seed, n_ot, step_fraction, cache)
    sched = {"kind": "indices", "k_list": [int(k) for k in ks]}
    return _finish_report(fam, spec, sched, samples)


# ---- fineness matrix -----------------------------------------------------------

SPACE_WITNESSES = {
    "C": [],
    "D": ["fig1", "history_1_0", "history_1_1", "history_4", "history_5_1",
          "history_5_2", "history_6_0", "history_6_1", "history_7"],
    "S": ["history_8", "history_9", "porcupine_1", "porcupine_2"],
}

DEFAULT_MATRIX_METRICS = ("H", "Hd", "V", "W1", "M", "PM")


@dataclass
class MatrixResult:
    space: str
    metrics: list
    entries: dict            # (alpha, beta) -> {"relation", "witnesses"}
    reports: dict = field(default_factory=dict)   # (witness, metric) -> report
    experiment: dict | None = None                # space C evidence

    def to_dict(self):
        out = {
            "space": self.space,
            "metrics": list(self.metrics),
            "entries": {f"{a}|{b}": v for (a, b), v in sorted(self.entries.items())},
            "tracks": {f"{w}|{m}": r.to_dict()
                       for (w, m), r in sorted(self.reports.items())},
        }
        if self.experiment is not None:
            out["experiment"] = self.experiment
        return out


def fineness_matrix(space: str, metrics=None, *, seed: int = 0,
                    n_ot: int = 1024, trials: int = 20) -> MatrixResult:
    """Pairwise topology comparison on one space.

    Entry (alpha, beta) is NOT-FINER when some witness history converges
    under alpha but not under beta, which rules out alpha-convergence
    implying beta-convergence; otherwise CONSISTENT-WITH-FINER.  The convex
    space has no separating catalog entry; its evidence is the random
    shrinking-perturbation experiment.
    """
    if space not in SPACE_WITNESSES:
        raise BadParams(f"space must be one of {sorted(SPACE_WITNESSES)}")
    names = [m for m in (metrics or DEFAULT_MATRIX_METRICS)]
    specs = [metric_by_name(m) if isinstance(m, str) else m for m in names]
    labels = [s.name for s in specs]
    if space == "C":
        exp = convex_equivalence_experiment(trials=trials, seed=seed,
                                            metrics=tuple(labels))
        entries = {}
        for a in labels:
            for b in labels:
                if a == b:
                    continue
                wit = sorted({f"random_convex_{f['trial']}"
                              for f in exp.failures if f["metric"] == b
                              and not any(g["trial"] == f["trial"]
                                          and g["metric"] == a
                                          for g in exp.failures)})
                rel = "NOT-FINER" if wit else "CONSISTENT-WITH-FINER"
                entries[(a, b)] = {"relation": rel, "witnesses": wit}
        return MatrixResult(space, labels, entries, {}, exp.to_dict())
    cache = {}
    reports = {}
    for wname in SPACE_WITNESSES[space]:
        h = catalog(wname)
        for spec in specs:
            reports[(wname, spec.name)] = limit_estimate(
                h, spec, seed=seed, n_ot=n_ot, cache=cache)
    entries = {}
    for a in labels:
        for b in labels:
            if a == b:
                continue
            witnesses = []
            for wname in SPACE_WITNESSES[space]:
                ra = reports[(wname, a)]
                rb = reports[(wname, b)]
                if (ra.verdict == "ConvergesToZero"
                        and rb.verdict in ("BoundedAway", "Diverges")):
                    witnesses.append(wname)
            if witnesses:
                entries[(a, b)] = {"relation": "NOT-FINER", "witnesses": witnesses}
            else:
                entries[(a, b)] = {"relation": "CONSISTENT-WITH-FINER", "witnesses": []}
    return MatrixResult(space, labels, entries, reports)


# ---- experiments ----------------------------------------------------------------

def _random_convex(rng, scale: float, center) -> ConvexPolygon:
    npts = int(rng.integers(6, 14))
    pts = center + scale * rng.normal(size=(npts * 2, 2)) * 0.5
    return ops.hull_of_points(pts)


def _perturbed(p: ConvexPolygon, amplitude: float, rng) -> ConvexPolygon:
    v = p.vertices
    jitter = rng.normal(size=v.shape) * amplitude
    shift = rng.normal(size=2) * amplitude
    return ops.hull_of_points(v + jitter + shift[None, :])


@dataclass
class EquivalenceResult:
    trials: int
    metrics: list
    failures: list
    details: list

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self):
        return {"trials": self.trials, "metrics": self.metrics,
                "failures": self.failures, "details": self.details}


def convex_equivalence_experiment(trials: int = 20, seed: int = 0, *,
                                  metrics=("H", "Hd", "V", "W1", "W2", "M", "PM"),
                                  halvings: int = 8, n_ot: int = 512,
                                  checkpoints=(0, 4, 8)) -> EquivalenceResult:
    """Random convex targets with geometrically shrinking perturbations.

    On convex regions every metric in the list must send the perturbed
    sequence to its target: the final checkpoint value must fall below
    max(0.02 * initial value, 3 * its error estimate).
    """
    rng = np.random.default_rng(seed)
    specs = [metric_by_name(m) for m in metrics]
    failures = []
    details = []
    for trial in range(trials):
        scale = float(rng.uniform(0.5, 2.0))
        center = rng.uniform(-1.0, 1.0, 2)
        target = _random_convex(rng, scale, center)
        a0 = 0.15 * target.diameter
        seq = {}
        for j in checkpoints:
            seq[j] = _perturbed(target, a0 * 0.5 ** j, rng)
        floor_cache = {}
        row = {"trial": trial, "scale": scale}
        for spec in specs:
            vals = {}
            for j in checkpoints:
                region = seq[j]
                if spec.uses_sampling:
                    fl = floor_cache.get(spec.name)
                    if fl is None:
                        fl = wasserstein_floor(target, spec.generator, n=n_ot,
                                               seed=seed + 900 + trial)
                        floor_cache[spec.name] = fl
                    mv = spec.evaluate(region, target, n=n_ot,
                                       seed=seed + 31 * trial + j, floor=fl)
                else:
                    step = target.diameter / 512.0
                    mv = spec.evaluate(region, target, step=step)
                vals[j] = mv
            first = vals[checkpoints[0]]
            last = vals[checkpoints[-1]]
            tol = max(0.02 * first.value, 3.0 * last.error)
            row[spec.name] = {"initial": first.value, "final": last.value,
                              "tol": tol}
            if not last.value <= tol:
                failures.append({"trial": trial, "metric": spec.name,
                                 "final": last.value, "tol": tol})
        details.append(row)
    return EquivalenceResult(trials, [s.name for s in specs], failures, details)


def wasserstein_order_experiment(alpha: str = "W1", beta: str = "Wp:3", *,
                                 seed: int = 0, n_ot: int = 1024) -> dict:
    """Separate two transport generators with one escaping-box history.

    Builds history_7 with the geometric-mean generator, under which the
    lighter generator's track collapses while the heavier one stays bounded
    away or diverges.
    """
    sa = metric_by_name(alpha)
    sb = metric_by_name(beta)
    if sa.generator is None or sb.generator is None:
        raise BadParams("both metrics must be transport metrics")
    pa, pb = sa.generator.power, sb.generator.power
    if pa is None or pb is None or not pa < pb:
        raise BadParams("need two power generators with alpha lighter than beta")
    mid = 0.5 * (pa + pb)
    h = catalog("history_7", {"psi": f"x^{mid:g}"})
    ra = limit_estimate(h, sa, seed=seed, n_ot=n_ot)
    rb = limit_estimate(h, sb, seed=seed, n_ot=n_ot)
    ok = (ra.verdict == "ConvergesToZero"
          and rb.verdict in ("BoundedAway", "Diverges"))
    return {"history": h.name, "psi": h.params["psi"],
            "alpha": ra.to_dict(), "beta": rb.to_dict(), "separated": ok}
