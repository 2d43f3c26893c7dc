"""Sobel gradients, edge/homogeneous labeling and edge-rate measurement.

Gradients use the standard 3x3 Sobel kernels with replicate border padding,
so the gradient field and every mask derived from it keep the source band's
dimensions. Magnitudes are sqrt(Gx^2 + Gy^2) and are deliberately left
unclamped; thresholding compares the raw magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .raster import Band


@dataclass(frozen=True)
class GradientField:
    """Per-pixel gradient magnitudes of one band."""

    magnitudes: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.magnitudes, dtype=np.float64)
        arr.flags.writeable = False
        object.__setattr__(self, "magnitudes", arr)

    @property
    def width(self) -> int:
        return self.magnitudes.shape[1]

    @property
    def height(self) -> int:
        return self.magnitudes.shape[0]


@dataclass(frozen=True)
class EdgeMask:
    """Boolean edge labels for one band at one threshold (True = edge point)."""

    labels: np.ndarray
    threshold: int
    source: str = ""

    def __post_init__(self):
        arr = np.asarray(self.labels, dtype=bool)
        arr.flags.writeable = False
        object.__setattr__(self, "labels", arr)
        if not 0 <= self.threshold <= 255:
            raise ValueError(f"threshold must lie in [0, 255], got {self.threshold}")

    @property
    def width(self) -> int:
        return self.labels.shape[1]

    @property
    def height(self) -> int:
        return self.labels.shape[0]

    def edge_count(self) -> int:
        return int(self.labels.sum())

    def to_band(self) -> Band:
        """Visualization band: edge pixels 255, homogeneous 0."""
        return Band(np.where(self.labels, 255, 0).astype(np.uint8))


def sobel_magnitude(band: Band) -> GradientField:
    """Gradient magnitude field of one band (replicate-padded 3x3 Sobel)."""
    padded = np.pad(band.data.astype(np.float64), 1, mode="edge")

    # 3x3 neighborhood views around each pixel
    tl = padded[:-2, :-2]; tc = padded[:-2, 1:-1]; tr = padded[:-2, 2:]
    ml = padded[1:-1, :-2];                         mr = padded[1:-1, 2:]
    bl = padded[2:, :-2];  bc = padded[2:, 1:-1];  br = padded[2:, 2:]

    gx = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl)
    gy = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr)
    return GradientField(np.sqrt(gx * gx + gy * gy))


def label_edges(grad: GradientField, threshold: int, source: str = "") -> EdgeMask:
    """Label pixels whose magnitude strictly exceeds the threshold as edges."""
    if not 0 <= threshold <= 255:
        raise ValueError(f"threshold must lie in [0, 255], got {threshold}")
    return EdgeMask(grad.magnitudes > threshold, threshold=threshold, source=source)


def edge_rate(mask: EdgeMask) -> float:
    """Fraction of pixels labeled edge."""
    return mask.edge_count() / (mask.width * mask.height)


DEFAULT_THRESHOLDS = (20, 40, 60, 80, 100)


def threshold_sweep(
    band: Band,
    thresholds=DEFAULT_THRESHOLDS,
    source: str = "",
) -> list[tuple[int, EdgeMask, float]]:
    """Label edges at every threshold over one shared gradient field.

    Thresholds must be strictly increasing and within [0, 255]. Because the
    gradient is computed once, edge sets shrink monotonically along the sweep.
    """
    thresholds = list(thresholds)
    if not thresholds:
        raise ValueError("threshold list must not be empty")
    if any(t2 <= t1 for t1, t2 in zip(thresholds, thresholds[1:])):
        raise ValueError(f"thresholds must be strictly increasing, got {thresholds}")
    if thresholds[0] < 0 or thresholds[-1] > 255:
        raise ValueError(f"thresholds must lie in [0, 255], got {thresholds}")

    grad = sobel_magnitude(band)
    out = []
    for t in thresholds:
        mask = label_edges(grad, t, source=source)
        out.append((t, mask, edge_rate(mask)))
    return out


def masks_by_threshold(img_bands, thresholds=DEFAULT_THRESHOLDS) -> dict[str, list[EdgeMask]]:
    """Per-band threshold sweeps, keyed by band label.

    `img_bands` is an iterable of (label, Band); each band is labeled from
    its own gradient.
    """
    return {
        label: [mask for _, mask, _ in threshold_sweep(band, thresholds, source=label)]
        for label, band in img_bands
    }


def check_mask_matches(mask: EdgeMask, band: Band) -> None:
    if (mask.height, mask.width) != band.shape:
        raise DimensionMismatchError(
            f"edge mask {mask.width}x{mask.height} does not match band "
            f"{band.width}x{band.height}"
        )
