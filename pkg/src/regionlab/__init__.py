"""Distances between bounded plane regions, morphs between them, and
convergence analysis of region histories under different metrics."""

from .errors import (BadParams, CenterOutside, ErodedToEmpty, NoOverlap,
                     NotContained, OutOfRange, PointOutsideRegion,
                     PreconditionViolated, RegionLabError, ResolutionTooCoarse,
                     SizeLimitExceeded, UnbalancedMass, UnknownName)
from .regions import (ConvexPolygon, PolarRegion, RadialPolygon, RasterRegion,
                      TwoComponent, box, disc, region_from_json,
                      region_to_json, regular_polygon)

__version__ = "0.1.0"
