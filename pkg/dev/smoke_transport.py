"""Dev scratch: transport sanity + Wasserstein sampling floor measurements."""
import time

import numpy as np

from regionlab.transport import (WeightedPoints, brute_force_ot, check_mulholland,
                                 power_fn, solve_exact, sqrt_fn, wasserstein_discrete)

rng = np.random.default_rng(7)

# oracle agreement: LSA vs brute force
for f in (power_fn(1), power_fn(2), power_fn(3)):
    worst = 0.0
    for t in range(60):
        n = int(rng.integers(2, 9))
        src = WeightedPoints.uniform(rng.normal(size=(n, 2)) * rng.uniform(0.1, 5))
        tgt = WeightedPoints.uniform(rng.normal(size=(n, 2)) * rng.uniform(0.1, 5))
        a = brute_force_ot(src, tgt, f).total_cost
        b = solve_exact(src, tgt, f).total_cost
        worst = max(worst, abs(a - b) / max(1e-12, abs(a)))
    print(f.name, "worst rel diff", worst)
    assert worst < 1e-9

# LP path vs assignment on uniform instances
f1 = power_fn(1)
for t in range(20):
    n = int(rng.integers(2, 30))
    src = WeightedPoints.uniform(rng.normal(size=(n, 2)))
    tgt = WeightedPoints.uniform(rng.normal(size=(n, 2)))
    from regionlab.transport import _solve_lp
    a = solve_exact(src, tgt, f1).total_cost
    b = _solve_lp(src, tgt, f1).total_cost
    assert abs(a - b) < 1e-8 * max(1, abs(a)), (a, b)
print("LP matches assignment")

# mulholland checks
for f, expect in ((power_fn(1), True), (power_fn(2), True), (power_fn(3), True),
                  (sqrt_fn(), False)):
    rep = check_mulholland(f, trials=400, seed=11)
    print(f.name, rep["ok"], rep["counterexample"] if not rep["ok"] else "")
    assert rep["ok"] == expect

# timing at the assignment cap scale
for n in (512, 1024):
    pts1 = rng.random((n, 2))
    pts2 = rng.random((n, 2))
    t0 = time.time()
    w = wasserstein_discrete(WeightedPoints.uniform(pts1), WeightedPoints.uniform(pts2), f1)
    print(f"n={n} W1 self-floor unit square: {w:.4f}  ({time.time()-t0:.2f}s)")

# floor measurements: same-region independent samples, several shapes/generators
from regionlab.ops import sample_uniform
from regionlab.regions import box, disc

shapes = {
    "unit_square": box(0, 0, 1, 1),
    "disc1": disc(1.0),
    "disc2": disc(2.0),
}
for name, shp in shapes.items():
    for f in (power_fn(1), power_fn(2), power_fn(3)):
        vals = []
        for s in range(4):
            a = WeightedPoints.uniform(sample_uniform(shp, 1024, 100 + 2 * s))
            b = WeightedPoints.uniform(sample_uniform(shp, 1024, 101 + 2 * s))
            vals.append(wasserstein_discrete(a, b, f))
        vals = np.asarray(vals)
        print(f"floor {name} {f.name}: mean={vals.mean():.4f} sd={vals.std():.4f}")

# floor at n/2 for comparison
for f in (power_fn(1), power_fn(3)):
    a = WeightedPoints.uniform(sample_uniform(shapes["unit_square"], 512, 300))
    b = WeightedPoints.uniform(sample_uniform(shapes["unit_square"], 512, 301))
    print(f"floor unit_square {f.name} n=512: {wasserstein_discrete(a, b, f):.4f}")

print("smoke_transport OK")
