"""Brightness histograms, whole-image or restricted to edge pixels.

Spectral drift introduced by fusion shows up as a change in histogram shape.
The scalar measure used here is the total-variation distance between the
normalized histograms: 0.5 * sum |p1 - p2|, bounded in [0, 1], symmetric and
insensitive to differing pixel counts.

The edge-restricted suite compares fused and reference histograms where each
image is masked by its OWN Sobel edges: sharpening creates edge pixels (and
intensities) the reference never had, and that asymmetry is part of what the
comparison is meant to expose.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .edges import check_mask_matches, sobel_magnitude, label_edges, EdgeMask
from .errors import DimensionMismatchError, EmptyHistogramError
from .raster import Band, MultibandImage

NO_EDGE_PIXELS = "no edges"


@dataclass(frozen=True)
class Histogram256:
    """Counts of each 8-bit intensity for one band and scope."""

    bins: np.ndarray
    band: str              # "R" | "G" | "B" | "L"
    scope: str             # "whole" | "edges@<t>"

    def __post_init__(self):
        arr = np.asarray(self.bins, dtype=np.int64)
        if arr.shape != (256,):
            raise ValueError(f"histogram needs exactly 256 bins, got shape {arr.shape}")
        if (arr < 0).any():
            raise ValueError("histogram counts must be non-negative")
        arr.flags.writeable = False
        object.__setattr__(self, "bins", arr)

    @property
    def total(self) -> int:
        return int(self.bins.sum())

    def normalized(self) -> np.ndarray:
        total = self.total
        if total == 0:
            raise EmptyHistogramError(f"histogram {self.band}/{self.scope} is empty")
        return self.bins / total


def build_histogram(band: Band, mask: EdgeMask | None = None,
                    band_name: str = "", scope: str = "whole") -> Histogram256:
    """Histogram over all pixels, or over edge-labeled pixels when a mask is given."""
    if mask is None:
        values = band.pixels()
    else:
        check_mask_matches(mask, band)
        values = band.data[mask.labels]
        scope = f"edges@{mask.threshold}"
    counts = np.bincount(values, minlength=256)
    return Histogram256(counts, band=band_name, scope=scope)


def histogram_delta(h1: Histogram256, h2: Histogram256) -> float:
    """Total-variation distance between two normalized histograms, in [0, 1]."""
    return float(0.5 * np.abs(h1.normalized() - h2.normalized()).sum())


@dataclass(frozen=True)
class HistogramPair:
    """Fused/reference histograms of one band plus their distance."""

    band: str
    fused: Histogram256
    reference: Histogram256
    delta: float | None
    note: str | None = None


def edge_histogram_suite(
    fused: MultibandImage,
    ms: MultibandImage,
    threshold: int = 20,
) -> list[HistogramPair]:
    """Edge-restricted histogram comparison for R, G, B and L.

    Each image is masked by its own per-band edges at `threshold`. Bands where
    either image has no edge pixels report a marker instead of a distance.
    """
    if (fused.width, fused.height) != (ms.width, ms.height):
        raise DimensionMismatchError(
            f"fused image {fused.width}x{fused.height} does not match "
            f"reference {ms.width}x{ms.height}"
        )
    pairs = []
    for band_name in ("R", "G", "B", "L"):
        f_band = fused.band(band_name)
        m_band = ms.band(band_name)
        f_mask = label_edges(sobel_magnitude(f_band), threshold, source=band_name)
        m_mask = label_edges(sobel_magnitude(m_band), threshold, source=band_name)
        f_hist = build_histogram(f_band, f_mask, band_name=band_name)
        m_hist = build_histogram(m_band, m_mask, band_name=band_name)
        if f_hist.total == 0 or m_hist.total == 0:
            pairs.append(HistogramPair(band_name, f_hist, m_hist, None, note=NO_EDGE_PIXELS))
        else:
            pairs.append(HistogramPair(band_name, f_hist, m_hist,
                                       histogram_delta(f_hist, m_hist)))
    return pairs
