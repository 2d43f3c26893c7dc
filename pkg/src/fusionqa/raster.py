"""Core raster types and pixel operations.

A Band is an 8-bit single-channel image stored as a read-only numpy array
of shape (height, width). A MultibandImage groups the R, G, B bands of one
method under a label. All operations are pure: inputs are never mutated
and every Band handed out is frozen, so values can be shared freely across
worker threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import BoundsError, DimensionMismatchError, EmptyRegionError


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


def round_half_up(values: np.ndarray) -> np.ndarray:
    """Round to nearest integer with .5 rounding up (not banker's)."""
    return np.floor(np.asarray(values, dtype=np.float64) + 0.5)


def clamp_u8(values: np.ndarray) -> np.ndarray:
    """Round half-up and clamp to the 8-bit range."""
    return np.clip(round_half_up(values), 0, 255).astype(np.uint8)


@dataclass(frozen=True)
class Band:
    """Single-channel 8-bit image, row-major, intensities in [0, 255]."""

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError(f"band must be a non-empty 2-D grid, got shape {arr.shape}")
        if arr.dtype != np.uint8:
            if not np.issubdtype(arr.dtype, np.integer):
                raise ValueError(f"band pixels must be integers, got dtype {arr.dtype}")
            if arr.min() < 0 or arr.max() > 255:
                raise ValueError("band intensities must lie in [0, 255]")
            arr = arr.astype(np.uint8)
        object.__setattr__(self, "data", _freeze(arr))

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def pixels(self) -> np.ndarray:
        """Flat view of all intensities, row-major."""
        return self.data.ravel()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Band):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(
            np.array_equal(self.data, other.data)
        )


@dataclass(frozen=True)
class MultibandImage:
    """Ordered R, G, B bands of identical dimensions plus a method label."""

    r: Band
    g: Band
    b: Band
    label: str = ""

    def __post_init__(self):
        if not (self.r.shape == self.g.shape == self.b.shape):
            raise DimensionMismatchError(
                f"bands of '{self.label}' differ in size: "
                f"R{self.r.shape} G{self.g.shape} B{self.b.shape}"
            )

    @property
    def width(self) -> int:
        return self.r.width

    @property
    def height(self) -> int:
        return self.r.height

    def bands(self) -> list[tuple[str, Band]]:
        """Bands in fixed report order."""
        return [("R", self.r), ("G", self.g), ("B", self.b)]

    def band(self, name: str) -> Band:
        try:
            return {"R": self.r, "G": self.g, "B": self.b, "L": self.l}[name]
        except KeyError:
            raise KeyError(f"unknown band {name!r}, expected R, G, B or L") from None

    @property
    def l(self) -> Band:
        return l_component(self)


@dataclass(frozen=True)
class RegionSpec:
    """Named rectangular block [x0, x0+w) x [y0, y0+h)."""

    name: str
    x0: int
    y0: int
    w: int
    h: int
    group: str = ""

    def __post_init__(self):
        if self.w < 1 or self.h < 1:
            raise ValueError(f"region '{self.name}' must be at least 1x1, got {self.w}x{self.h}")
        if not self.group:
            object.__setattr__(self, "group", self.name)

    def check_bounds(self, width: int, height: int) -> None:
        if self.x0 < 0 or self.y0 < 0 or self.x0 + self.w > width or self.y0 + self.h > height:
            raise BoundsError(
                f"region '{self.name}' ({self.w}x{self.h} at {self.x0},{self.y0}) "
                f"exceeds image bounds {width}x{height}"
            )


@dataclass(frozen=True)
class PixelStats:
    """Population statistics of one pixel collection."""

    mean: float
    std_dev: float
    n: int
    min: float
    max: float

    variance: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "variance", self.std_dev * self.std_dev)


def upsample_nearest(src: Band, factor: int) -> Band:
    """Nearest-neighbor upsample: each source pixel becomes a factor x factor block."""
    if factor < 1:
        raise ValueError(f"upsample factor must be >= 1, got {factor}")
    if factor == 1:
        return src
    out = np.repeat(np.repeat(src.data, factor, axis=0), factor, axis=1)
    return Band(out)


def l_component(img: MultibandImage) -> Band:
    """Overall luminosity band: per-pixel mean of R, G, B, rounded half-up."""
    total = (
        img.r.data.astype(np.int64)
        + img.g.data.astype(np.int64)
        + img.b.data.astype(np.int64)
    )
    return Band(clamp_u8(total / 3.0))


def extract_block(band: Band, region: RegionSpec) -> Band:
    """Copy the sub-grid covered by `region` out of `band`."""
    region.check_bounds(band.width, band.height)
    block = band.data[region.y0 : region.y0 + region.h, region.x0 : region.x0 + region.w]
    return Band(block.copy())


def pixel_stats(pixels) -> PixelStats:
    """Mean, population standard deviation and extrema of a pixel collection.

    The divisor is the pixel count (no Bessel correction).
    """
    arr = np.asarray(pixels, dtype=np.float64).ravel()
    if arr.size == 0:
        raise EmptyRegionError("cannot compute statistics of an empty pixel collection")
    return PixelStats(
        mean=float(arr.mean()),
        std_dev=float(arr.std(ddof=0)),
        n=int(arr.size),
        min=float(arr.min()),
        max=float(arr.max()),
    )
