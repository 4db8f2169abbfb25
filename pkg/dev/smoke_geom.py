"""Dev scratch: sanity-check the geometry core against hand values."""
import numpy as np

from regionlab.regions import ConvexPolygon, PolarRegion, TwoComponent, box, disc
from regionlab import ops
from regionlab.maxdist import sup_boundary_to_region, sup_depth_outside

sq = box(0, 0, 1, 1)
print("area", sq.area, "perim", sq.perimeter, "diam", sq.diameter)
assert abs(sq.area - 1) < 1e-12 and abs(sq.perimeter - 4) < 1e-12
assert abs(sq.diameter - np.sqrt(2)) < 1e-12

c, r = ops.chebyshev_center(sq)
print("cheb", c, r)
assert np.allclose(c, [0.5, 0.5], atol=1e-7) and abs(r - 0.5) < 1e-7

pts = np.array([[0.5, 0.5], [2.0, 0.5], [-1.0, -1.0], [0.5, 1.3]])
print("dist", sq.distance(pts))
assert np.allclose(sq.distance(pts), [0, 1, np.sqrt(2), 0.3])
print("depth", sq.depth(pts))
assert np.allclose(sq.depth(pts), [0.5, 0, 0, 0])

er = ops.erode(sq, 0.2)
print("eroded bbox", er.bbox(), "area", er.area)
assert np.allclose(er.bbox(), (0.2, 0.2, 0.8, 0.8), atol=1e-9)
assert abs(er.area - 0.36) < 1e-9

dl = ops.dilate(sq, 0.5)
steiner = 1 + 4 * 0.5 + np.pi * 0.25
print("dilated area", dl.area, "steiner", steiner)
assert abs(dl.area - steiner) < 1e-3 * steiner

d2 = disc(1.0)
print("disc area", d2.area, "perim", d2.perimeter, "diam", d2.diameter)
assert abs(d2.area - np.pi) < 1e-12
assert abs(d2.perimeter - 2 * np.pi) < 1e-12
assert abs(d2.diameter - 2.0) < 2e-3

# polar with wedge, angular wrap
pw = PolarRegion(1.0, [(-0.2, 0.2, 1.0, 2.0)])
a_expect = np.pi + 0.5 * (4 - 1) * 0.4
print("wedge area", pw.area, a_expect)
assert abs(pw.area - a_expect) < 1e-12
qp = np.array([[1.5, 0.0], [1.5 * np.cos(0.1), 1.5 * np.sin(0.1)], [0, 1.5], [2.5, 0]])
print("contains", pw.contains(qp))
assert list(pw.contains(qp)) == [True, True, False, False]
print("dist", pw.distance(qp))
assert abs(pw.distance(qp)[2] - 0.5) < 1e-12
assert abs(pw.distance(qp)[3] - 0.5) < 1e-12
# depth near the wrap seam must not see a phantom side at angle 0
seam = np.array([[1.5, 0.001], [1.5, -0.001]])
dseam = pw.depth(seam)
print("seam depth", dseam)
assert np.all(dseam > 0.15), dseam

# sup distance: two unit squares shifted by 0.25
sq2 = box(0.25, 0.0, 1.25, 1.0)
res = sup_boundary_to_region(sq, sq2, 1e-4)
print("h1", res)
assert abs(res.value - 0.25) < 2e-4

# complement-side: fig1-like pair at i=10
tc = TwoComponent(box(0, 0, 1, 1), box(2, 0, 2.1, 1))
res2 = sup_depth_outside(sq, tc, 1e-4)
print("compl sup (dual side)", res2)
assert abs(res2.value - 0.05) < 2e-4

res3 = sup_boundary_to_region(tc, sq, 1e-4)
print("h1(tc, sq)", res3)
assert abs(res3.value - 1.1) < 2e-4

# h1 other way: sq inside union -> 0
res4 = sup_boundary_to_region(sq, tc, 1e-4)
print("h1(sq, tc)", res4)
assert res4.value < 2e-4

# porcupine-ish polar: disc + 8 wedges
segs = [(2 * np.pi * i / 8, 2 * np.pi * i / 8 + 2 * np.pi / 64, 1.0, 2.0) for i in range(8)]
pc = PolarRegion(1.0, segs)
big = disc(2.0)
r5 = sup_boundary_to_region(big, pc, 1e-3)
exp = None
print("H1(B2, porcupine8)", r5.value, "err", r5.error)
# gap midpoint at radius 2 sits half a gap angle from the nearest wedge
r6 = sup_boundary_to_region(pc, big, 1e-3)
assert r6.value < 1e-3

import json
from regionlab.regions import region_to_json, region_from_json
j = region_to_json(tc)
tc2 = region_from_json(json.loads(json.dumps(j)))
assert abs(tc2.area - tc.area) < 1e-12

print("smoke_geom OK")
