"""Michelson contrast and contrast statistical analysis over pixel populations.

Two contrast measures share one result type:

* ``michelson`` - (Imax - Imin) / (Imax + Imin) over a region's exact extrema.
* ``csa`` - sigma / mu of a pixel population. Substituting Imin = mu - sigma
  and Imax = mu + sigma into the Michelson formula collapses to exactly this
  ratio, which is how the two metrics relate algebraically.

``csa`` applied to the edge-labeled and homogeneous-labeled populations of a
band is the spatial-quality measure this package exists for: sharpening an
image raises dispersion at its edges, so edge-population csa grows while the
homogeneous population barely moves.

Note: sigma/mu may exceed 1.0 for strongly skewed populations (most mass at
zero with a few bright pixels). Values are reported as computed, unclamped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .edges import EdgeMask, check_mask_matches
from .errors import DegenerateRegionError, EmptyRegionError
from .raster import Band, MultibandImage, pixel_stats

NO_EDGES = "no edges"
NO_HOMOGENEOUS = "no homogeneous pixels"
ALL_BLACK = "undefined (all-black region)"


@dataclass(frozen=True)
class ContrastResult:
    """One contrast value (or explicit marker) for a band and scope."""

    metric: str            # "michelson" | "csa"
    band: str              # "R" | "G" | "B" | "L" | "PAN"
    scope: str             # "whole" | region name | "edges@<t>" | "homogeneous@<t>"
    value: float | None
    n: int
    threshold: int | None = None
    note: str | None = None


def michelson(pixels) -> float:
    """Michelson contrast (Imax - Imin) / (Imax + Imin) of a pixel collection."""
    arr = np.asarray(pixels, dtype=np.float64).ravel()
    if arr.size == 0:
        raise EmptyRegionError("michelson contrast of an empty region is undefined")
    imax = float(arr.max())
    imin = float(arr.min())
    if imax + imin == 0.0:
        raise DegenerateRegionError("michelson contrast undefined for an all-black region")
    return (imax - imin) / (imax + imin)


def csa(pixels) -> float:
    """Contrast ratio sigma / mu of a pixel population (population statistics)."""
    stats = pixel_stats(pixels)
    if stats.mean == 0.0:
        raise DegenerateRegionError("contrast ratio undefined for an all-black population")
    return stats.std_dev / stats.mean


def _population_result(metric, band_name, scope, pixels, threshold=None) -> ContrastResult:
    fn = michelson if metric == "michelson" else csa
    n = int(np.asarray(pixels).size)
    try:
        value = fn(pixels)
    except DegenerateRegionError:
        return ContrastResult(metric, band_name, scope, None, n,
                              threshold=threshold, note=ALL_BLACK)
    return ContrastResult(metric, band_name, scope, value, n, threshold=threshold)


def band_csa_results(band_name: str, band: Band, masks: list[EdgeMask]) -> list[ContrastResult]:
    """Edge- and homogeneous-population CSA of one band across its mask sweep."""
    results = []
    for mask in masks:
        check_mask_matches(mask, band)
        t = mask.threshold
        edge_px = band.data[mask.labels]
        homog_px = band.data[~mask.labels]

        if edge_px.size == 0:
            results.append(ContrastResult("csa", band_name, f"edges@{t}", None, 0,
                                          threshold=t, note=NO_EDGES))
        else:
            results.append(_population_result("csa", band_name, f"edges@{t}",
                                              edge_px, threshold=t))

        if homog_px.size == 0:
            results.append(ContrastResult("csa", band_name, f"homogeneous@{t}", None, 0,
                                          threshold=t, note=NO_HOMOGENEOUS))
        else:
            results.append(_population_result("csa", band_name, f"homogeneous@{t}",
                                              homog_px, threshold=t))
    return results


def csa_report(
    img: MultibandImage,
    masks: dict[str, list[EdgeMask]],
) -> list[ContrastResult]:
    """CSA of the edge and homogeneous populations, per band and threshold.

    `masks` maps each band label to its own threshold sweep (masks computed
    from that band's gradient). Empty populations yield marker entries, never
    a 0/0.
    """
    threshold_sets = set()
    for band_name, _ in img.bands():
        if band_name not in masks:
            raise ValueError(f"no edge masks supplied for band {band_name}")
        threshold_sets.add(tuple(m.threshold for m in masks[band_name]))
    if len(threshold_sets) != 1:
        raise ValueError(f"bands carry different threshold sweeps: {sorted(threshold_sets)}")

    results = []
    for band_name, band in img.bands():
        results.extend(band_csa_results(band_name, band, masks[band_name]))
    return results


def whole_image_csa(img: MultibandImage) -> list[ContrastResult]:
    """CSA of each full band."""
    return [
        _population_result("csa", band_name, "whole", band.pixels())
        for band_name, band in img.bands()
    ]


def michelson_report(
    img: MultibandImage,
    region_set,
    include_whole: bool = True,
) -> list[ContrastResult]:
    """Michelson contrast per band over each region group and the whole image.

    Pooled groups (the seven-block set) contribute the union of their blocks'
    pixels as a single population.
    """
    results = []
    for band_name, band in img.bands():
        for group_name, pixels in region_set.group_pixels(band):
            results.append(_population_result("michelson", band_name, group_name, pixels))
        if include_whole:
            results.append(_population_result("michelson", band_name, "whole", band.pixels()))
    return results


def single_band_reports(
    band: Band,
    band_name: str,
    masks: list[EdgeMask],
    region_set,
    include_whole: bool = True,
) -> list[ContrastResult]:
    """Spatial contrast suite for one standalone band (the panchromatic input)."""
    results = []
    for group_name, pixels in region_set.group_pixels(band):
        results.append(_population_result("michelson", band_name, group_name, pixels))
    if include_whole:
        results.append(_population_result("michelson", band_name, "whole", band.pixels()))
        results.append(_population_result("csa", band_name, "whole", band.pixels()))
    results.extend(band_csa_results(band_name, band, masks))
    return results
