"""Exception taxonomy shared by the geometry, transport, morphing and analysis layers."""


class RegionLabError(Exception):
    """Base class for all library errors."""


class BadParams(RegionLabError):
    """Constructor or function input violates a documented invariant."""


class OutOfRange(RegionLabError):
    """Parameter outside its documented domain, e.g. history time outside (0, t_max]."""


class UnknownName(RegionLabError):
    """Catalog lookup for a name that is not registered."""


class PointOutsideRegion(RegionLabError):
    """A query point required to lie in a region does not."""


class CenterOutside(RegionLabError):
    """A morph or radius query center is not an interior point."""


class NotContained(RegionLabError):
    """A region required to lie inside an envelope sticks out."""


class NoOverlap(RegionLabError):
    """Two regions required to share interior points are disjoint."""


class ErodedToEmpty(RegionLabError):
    """Erosion radius at least the inradius; the eroded region is empty."""


class ResolutionTooCoarse(RegionLabError):
    """A rasterized result changes too much under one grid refinement."""


class SizeLimitExceeded(RegionLabError):
    """A transport instance is larger than the exact solvers accept."""


class UnbalancedMass(RegionLabError):
    """Source and target masses differ; balanced transport is undefined."""


class PreconditionViolated(RegionLabError):
    """A bound's hypothesis fails, so its construction is not attempted."""
