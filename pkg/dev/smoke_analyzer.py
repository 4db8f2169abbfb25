"""Calibration pass for the verdict machinery: runs every reproduction row,
prints per-sample values and the verdict margins.  Select parts via argv."""

import sys
import time

import numpy as np

from regionlab import analyzer, audits, histories, metrics, morphing


def part_a():
    print("== A: thin-wedge rays + quick audits ==")
    h9 = histories.catalog("history_9")
    q = h9.eval(0.05)
    lim = h9.limit
    mv = metrics.homeo_upper_bound(q, lim, rays=1024)
    outer = 1.0 / np.sqrt(0.05)
    print(f"history_9 t=0.05: M ub = {mv.value:.4f} expect ~{outer - 1.0:.4f}")
    assert mv.value > 0.5 * (outer - 1.0), "wedge missed by ray table"
    t0 = time.time()
    for res in audits.bound_audits(trials=15, seed=3):
        print(f"  audit {res.name}: checked={res.checked} skipped={res.skipped} "
              f"violations={res.violations} worst_margin={res.worst_margin:.3e}")
    print(f"  audits took {time.time() - t0:.1f}s at 15 trials")


def part_b():
    print("== B: closed-form witness values ==")
    fig1 = histories.catalog("fig1")
    q, lim = fig1.eval(10), fig1.limit
    v = metrics.sym_diff_area(q, lim)
    h = metrics.hausdorff(q, lim, step=1e-3)
    print(f"fig1 i=10: V={v.value:.6f} (want 0.1)  H={h.value:.6f} (want 1.1)")
    h4 = histories.catalog("history_4")
    for t in (0.4, 0.1):
        q = h4.eval(t)
        hh = metrics.hausdorff(q, h4.limit, step=1e-3)
        hd = metrics.dual_hausdorff(q, h4.limit, step=1e-3)
        print(f"history_4 t={t}: H={hh.value:.5f} (want {t})  Hd={hd.value:.5f} (want 1)")
    h51 = histories.catalog("history_5_1")
    for t in (0.4, 0.1):
        q = h51.eval(t)
        v = metrics.sym_diff_area(q, h51.limit)
        hh = metrics.hausdorff(q, h51.limit, step=1e-3)
        print(f"history_5_1 t={t}: V={v.value:.6f} (want {t*t})  "
              f"H={hh.value:.5f} (want {1+t})")
    h8 = histories.catalog("history_8")
    for t in (0.2, 0.05):
        q = h8.eval(t)
        hh = metrics.hausdorff(q, h8.limit, step=1e-3)
        print(f"history_8 t={t}: H={hh.value:.5f} (want 1)")


ROWS = [
    ("history_4", None, "H", "ConvergesToZero"),
    ("history_4", None, "Hd", "BoundedAway"),
    ("history_5_1", None, "V", "ConvergesToZero"),
    ("history_5_1", None, "W1", "ConvergesToZero"),
    ("history_5_1", None, "H", "BoundedAway"),
    ("history_7", {"psi": "x^2"}, "W1", "ConvergesToZero"),
    ("history_7", {"psi": "x^2"}, "Wp:3", "BoundedAway|Diverges"),
    ("history_8", None, "V", "ConvergesToZero"),
    ("history_8", None, "W1", "ConvergesToZero"),
    ("history_8", None, "H", "BoundedAway"),
    ("history_9", {"psi": "x^2"}, "W1", "ConvergesToZero"),
    ("history_9", {"psi": "x^2"}, "Wp:3", "BoundedAway|Diverges"),
    ("porcupine_1", None, "H", "ConvergesToZero"),
    ("porcupine_1", None, "V", "BoundedAway"),
    ("porcupine_1", None, "W1", "BoundedAway"),
    ("porcupine_2", None, "W1", "ConvergesToZero"),
    ("porcupine_2", None, "V", "BoundedAway"),
]


def part_c(only=None):
    print("== C: verdict rows ==")
    bad = 0
    for name, params, metric, want in ROWS:
        if only and only not in name:
            continue
        h = histories.catalog(name, params)
        t0 = time.time()
        rep = analyzer.limit_estimate(h, metric, seed=0)
        dt = time.time() - t0
        vals = ["%.4g" % s.value for s in rep.samples]
        errs = ["%.3g" % s.error for s in rep.samples]
        ok = rep.verdict in want.split("|")
        bad += 0 if ok else 1
        flag = "ok " if ok else "BAD"
        print(f"{flag} {name}[{metric}] -> {rep.verdict} (want {want}) "
              f"tol={rep.tol:.4g} {dt:.0f}s")
        print(f"      v={vals}")
        print(f"      e={errs}  notes={rep.notes!r}")
    print(f"mismatches: {bad}")


if __name__ == "__main__":
    args = sys.argv[1:]
    if not args or "a" in args:
        part_a()
    if not args or "b" in args:
        part_b()
    if not args or "c" in args:
        only = None
        for a in args:
            if a.startswith("only="):
                only = a[5:]
        part_c(only)
