"""Dev scratch: morphing and history catalog sanity."""
import numpy as np

from regionlab import metrics, morphing, ops
from regionlab.histories import catalog, catalog_names, classify
from regionlab.regions import PolarRegion, box, disc

print(catalog_names())

# disc -> shifted disc morph: not polar (shifted disc is not origin-centered),
# so test convex pair instead
sq = box(0, 0, 1, 1)
sq2 = box(0.25, 0.1, 1.25, 1.1)
m = morphing.standard_morph_for_pair(sq, sq2, rays=2048)
f0 = m.frame(0.0)
f1 = m.frame(1.0)
print("frame0 area", f0.area, "frame1 area", f1.area)
assert abs(f0.area - 1.0) < 2e-3
assert abs(f1.area - 1.0) < 2e-3
# endpoint vertices must sit on the boundaries
assert sq.distance(f0.vertices).max() < 1e-9
assert sq2.distance(f1.vertices).max() < 1e-9
half = m.frame(0.5)
print("half area", half.area)

d = morphing.displacement_sup(m, 1.0)
print("displacement", d)
# shift by (0.25, 0.1): displacement should be near but above the shift norm
assert 0.26 < d < 0.9

# morph map is identity outside the window
far = np.array([[10.0, 10.0], [-5.0, 2.0]])
assert np.allclose(m.map_points(0.7, far), far)
# t=0 map is identity everywhere
pts = np.random.default_rng(0).random((50, 2)) * 3 - 0.5
assert np.allclose(m.map_points(0.0, pts), pts, atol=1e-12)

# homeo upper bound on polar pair
pc = catalog("porcupine_1").eval(8)
ub = metrics.homeo_upper_bound(pc, disc(2.0))
print("homeo ub porcupine8 vs disc2", ub.value)
assert abs(ub.value - 1.0) < 1e-9

# two component morph
from regionlab.regions import TwoComponent
p = TwoComponent(box(0, 0, 1, 1), box(3, 0, 4, 1))
q = TwoComponent(box(0.1, 0.0, 1.1, 1.0), box(2.9, 0.05, 3.9, 1.05))
tcm = morphing.two_component_morph(p, q)
print("tc displacement", tcm.displacement(1.0), "eps", tcm.eps)
assert tcm.displacement(1.0) < 0.5
ubtc = metrics.homeo_upper_bound(p, q)
print("tc homeo ub", ubtc.value)

# mismatch -> inf
ub2 = metrics.homeo_upper_bound(p, box(0, 0, 1, 1))
assert np.isinf(ub2.value)

# histories: closed-form checks
h8 = catalog("history_8")
t = 0.2
r8 = h8.eval(t)
v = metrics.sym_diff_area(r8, h8.limit)
print("history_8 V", v.value, "expected", 1.5 * t)
assert abs(v.value - 1.5 * t) < 1e-12
hh = metrics.hausdorff(r8, h8.limit, step=1e-3)
print("history_8 H", hh.value)
assert abs(hh.value - 1.0) < 2e-3

p1 = catalog("porcupine_1")
for k in (4, 8, 64):
    vv = metrics.sym_diff_area(p1.eval(k), p1.limit)
    expect = 3 * np.pi - 3 * np.pi / k
    print(f"porcupine_1 V(k={k})", vv.value, "expected", expect)
    assert abs(vv.value - expect) < 1e-9

h7 = catalog("history_7")
r7 = h7.eval(0.4)
assert abs(r7.second.area - 0.16) < 1e-12
print("history_7 box bottom", r7.second.bbox()[1], "expected", 1 / 0.4)

h5 = catalog("history_5_1")
vv = metrics.sym_diff_area(h5.eval(0.4), h5.limit)
assert abs(vv.value - 0.16) < 1e-12

# classify
assert classify(box(0, 0, 1, 1)) == ["C", "D", "S"]
assert classify(p) == ["D"]
assert "S" in classify(pc) and "D" not in classify(pc)

print("smoke_morph_hist OK")
