"""Signal-to-noise metrics for spectral quality.

Two variants:

* ``snr_region`` - mu / sigma of a homogeneous block, the reciprocal of the
  contrast ratio. Reported per region so the dependence on region choice is
  visible side by side.
* ``snr_whole`` - sqrt(sum F^2 / sum (F - M)^2) over a full band, treating
  every difference the fusion introduced against the reference as noise.
  Identical images are the ideal limit and raise IdenticalImagesError, which
  report builders convert to an explicit marker.

All accumulation happens in float64; the squared-intensity sum of a
600x525 band is ~2e10 and must not pass through narrow integer types.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConstantRegionError, DimensionMismatchError, IdenticalImagesError
from .raster import Band, MultibandImage, pixel_stats

CONSTANT_REGION = "undefined (constant region)"
IDENTICAL_IMAGES = "identical images (ideal)"


@dataclass(frozen=True)
class SnrResult:
    """One SNR value (or explicit marker) for a band and scope."""

    variant: str           # "region_a" | "whole_b"
    band: str              # "R" | "G" | "B"
    scope: str             # region group name or "whole"
    value: float | None
    reference: str | None = None   # reference method label for whole_b
    note: str | None = None


def snr_region(pixels) -> float:
    """Region SNR mu / sigma (population statistics)."""
    stats = pixel_stats(pixels)
    if stats.std_dev == 0.0:
        raise ConstantRegionError("region SNR undefined: zero standard deviation")
    return stats.mean / stats.std_dev


def snr_whole(fused: Band, reference: Band) -> float:
    """Whole-band SNR sqrt(sum F^2 / sum (F - M)^2) of fused vs reference."""
    if fused.shape != reference.shape:
        raise DimensionMismatchError(
            f"fused band {fused.width}x{fused.height} does not match "
            f"reference {reference.width}x{reference.height}"
        )
    f = fused.data.astype(np.float64)
    m = reference.data.astype(np.float64)
    noise = float(((f - m) ** 2).sum())
    if noise == 0.0:
        raise IdenticalImagesError("whole-image SNR denominator is zero: images are identical")
    signal = float((f * f).sum())
    return float(np.sqrt(signal / noise))


def snr_region_report(img: MultibandImage, region_set) -> list[SnrResult]:
    """Region SNR per band and region group; constant regions become markers."""
    results = []
    for band_name, band in img.bands():
        for group_name, pixels in region_set.group_pixels(band):
            try:
                value = snr_region(pixels)
            except ConstantRegionError:
                results.append(SnrResult("region_a", band_name, group_name, None,
                                         note=CONSTANT_REGION))
            else:
                results.append(SnrResult("region_a", band_name, group_name, value))
    return results


def snr_whole_report(fused: MultibandImage, ms: MultibandImage) -> list[SnrResult]:
    """Whole-image SNR of each fused band against the matching reference band."""
    if (fused.width, fused.height) != (ms.width, ms.height):
        raise DimensionMismatchError(
            f"fused image {fused.width}x{fused.height} does not match "
            f"reference {ms.width}x{ms.height}"
        )
    results = []
    for (band_name, f_band), (_, m_band) in zip(fused.bands(), ms.bands()):
        try:
            value = snr_whole(f_band, m_band)
        except IdenticalImagesError:
            results.append(SnrResult("whole_b", band_name, "whole", None,
                                     reference=ms.label, note=IDENTICAL_IMAGES))
        else:
            results.append(SnrResult("whole_b", band_name, "whole", value,
                                     reference=ms.label))
    return results
