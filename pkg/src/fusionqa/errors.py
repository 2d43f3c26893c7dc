"""Exception types shared across the fusionqa package.

Metric functions raise rather than returning sentinel values; the report
layer catches the degenerate cases and records explicit markers instead.
"""


class FusionQAError(Exception):
    """Base class for all fusionqa errors."""


class BoundsError(FusionQAError, ValueError):
    """A region falls outside the bounds of its target image."""


class EmptyRegionError(FusionQAError, ValueError):
    """A statistic was requested over zero pixels."""


class DegenerateRegionError(FusionQAError, ValueError):
    """Contrast is undefined: the region is all-black (zero mean)."""


class ConstantRegionError(FusionQAError, ValueError):
    """Region SNR is undefined: zero standard deviation."""


class IdenticalImagesError(FusionQAError, ValueError):
    """Whole-image SNR denominator is zero: the two images are identical.

    This is the ideal limit, not a failure; callers report it as a marker.
    """


class DimensionMismatchError(FusionQAError, ValueError):
    """Two rasters that must share dimensions do not."""


class ConfigError(FusionQAError, ValueError):
    """A configuration document is malformed."""


class EmptyHistogramError(FusionQAError, ValueError):
    """A histogram with zero total cannot be normalized or compared."""
