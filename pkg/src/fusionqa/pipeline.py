"""End-to-end evaluation: load inputs, run every metric family, emit files.

The pipeline evaluates the upsampled MS, the PAN (spatial metrics only,
as the sharpness target) and each fused image:

* Michelson contrast per region group and whole image
* contrast ratio (sigma/mu) whole image and over edge / homogeneous
  populations at every threshold, with per-band edge rates
* region SNR per band and group (MS and fused; spectral, so PAN is skipped)
* whole-image SNR of each fused band against the upsampled MS
* edge-restricted histogram distances (R, G, B, L) at the histogram
  threshold, with the histograms embedded in the report

Independent fused inputs may be evaluated concurrently (FUSIONQA_THREADS
caps the pool); results are merged in input order so output is
deterministic regardless of scheduling.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

from . import netpbm
from .contrast import csa_report, michelson_report, single_band_reports, whole_image_csa
from .edges import (
    DEFAULT_THRESHOLDS,
    edge_rate,
    label_edges,
    masks_by_threshold,
    sobel_magnitude,
    threshold_sweep,
)
from .errors import DimensionMismatchError
from .histogram import build_histogram, edge_histogram_suite
from .raster import Band, MultibandImage, upsample_nearest
from .regions import RegionSet, load_region_set
from .report import (
    HistogramRecord,
    InputRecord,
    MetricEntry,
    MetricReport,
    TOOL_VERSION,
)
from .snr import snr_region_report, snr_whole_report

MS_LABEL = "MS"
PAN_LABEL = "PAN"


def worker_count(n_tasks: int) -> int:
    """Pool size for fan-out, capped by the FUSIONQA_THREADS env var."""
    cap = os.environ.get("FUSIONQA_THREADS", "")
    try:
        limit = int(cap) if cap else (os.cpu_count() or 1)
    except ValueError:
        limit = 1
    return max(1, min(n_tasks, limit))


def infer_upsample_factor(pan: Band, ms: MultibandImage) -> int:
    """Exact integer ratio between PAN and MS dimensions; anything else fails."""
    if pan.width % ms.width or pan.height % ms.height:
        raise DimensionMismatchError(
            f"PAN {pan.width}x{pan.height} is not an integer multiple of "
            f"MS {ms.width}x{ms.height}"
        )
    fx = pan.width // ms.width
    fy = pan.height // ms.height
    if fx != fy:
        raise DimensionMismatchError(
            f"PAN/MS ratios differ per axis: x{fx} vs x{fy}"
        )
    return fx


def upsample_image(ms: MultibandImage, factor: int) -> MultibandImage:
    if factor == 1:
        return ms
    return MultibandImage(
        upsample_nearest(ms.r, factor),
        upsample_nearest(ms.g, factor),
        upsample_nearest(ms.b, factor),
        label=ms.label,
    )


def _contrast_to_entries(method: str, results) -> list[MetricEntry]:
    return [
        MetricEntry(method, r.metric, r.band, r.scope, r.value,
                    n=r.n, threshold=r.threshold, note=r.note)
        for r in results
    ]


def _snr_to_entries(method: str, results, metric: str) -> list[MetricEntry]:
    return [
        MetricEntry(method, metric, r.band, r.scope, r.value,
                    reference=r.reference, note=r.note)
        for r in results
    ]


def _spatial_entries(method: str, img: MultibandImage, region_set: RegionSet,
                     thresholds) -> list[MetricEntry]:
    masks = masks_by_threshold(img.bands(), thresholds)
    entries = _contrast_to_entries(method, michelson_report(img, region_set))
    entries += _contrast_to_entries(method, whole_image_csa(img))
    entries += _contrast_to_entries(method, csa_report(img, masks))
    for band_name, _ in img.bands():
        for mask in masks[band_name]:
            entries.append(MetricEntry(
                method, "edge_rate", band_name, f"edges@{mask.threshold}",
                edge_rate(mask), n=mask.edge_count(), threshold=mask.threshold,
            ))
    return entries


def _pan_entries(pan: Band, region_set: RegionSet, thresholds) -> list[MetricEntry]:
    sweep = threshold_sweep(pan, thresholds, source=PAN_LABEL)
    masks = [mask for _, mask, _ in sweep]
    results = single_band_reports(pan, PAN_LABEL, masks, region_set)
    entries = _contrast_to_entries(PAN_LABEL, results)
    for t, mask, rate in sweep:
        entries.append(MetricEntry(PAN_LABEL, "edge_rate", PAN_LABEL, f"edges@{t}",
                                   rate, n=mask.edge_count(), threshold=t))
    return entries


def _fused_entries(method: str, fused: MultibandImage, ms_up: MultibandImage,
                   region_set: RegionSet, thresholds, hist_threshold: int):
    entries = _spatial_entries(method, fused, region_set, thresholds)
    entries += _snr_to_entries(method, snr_region_report(fused, region_set), "snr_a")
    entries += _snr_to_entries(method, snr_whole_report(fused, ms_up), "snr_b")

    histograms: list[HistogramRecord] = []
    pairs = edge_histogram_suite(fused, ms_up, hist_threshold)
    for pair in pairs:
        entries.append(MetricEntry(
            method, "hist_delta", pair.band, pair.fused.scope, pair.delta,
            n=pair.fused.total, threshold=hist_threshold,
            reference=MS_LABEL, note=pair.note,
        ))
        histograms.append(HistogramRecord(method, pair.band, pair.fused.scope,
                                          tuple(int(c) for c in pair.fused.bins)))
    return entries, histograms


def evaluate_images(
    pan: Band,
    ms: MultibandImage,
    fused: list[MultibandImage],
    thresholds=DEFAULT_THRESHOLDS,
    hist_threshold: int = 20,
    region_config: dict | None = None,
    input_paths: dict[str, str] | None = None,
) -> MetricReport:
    """Run the full metric suite over already-loaded images."""
    factor = infer_upsample_factor(pan, ms)
    ms_up = upsample_image(ms, factor)
    ms_up = MultibandImage(ms_up.r, ms_up.g, ms_up.b, label=MS_LABEL)

    for img in fused:
        if (img.width, img.height) != (pan.width, pan.height):
            raise DimensionMismatchError(
                f"fused image '{img.label}' is {img.width}x{img.height}, "
                f"expected {pan.width}x{pan.height}"
            )

    region_set = load_region_set(region_config, (pan.width, pan.height))
    thresholds = list(thresholds)
    paths = input_paths or {}

    report = MetricReport(
        version=TOOL_VERSION,
        created_utc=datetime.now(timezone.utc).isoformat(),
        thresholds=thresholds,
        hist_threshold=hist_threshold,
        regions=[
            {"name": s.name, "x0": s.x0, "y0": s.y0, "w": s.w, "h": s.h, "group": s.group}
            for s in region_set.specs
        ],
    )
    report.inputs.append(InputRecord("pan", PAN_LABEL, paths.get(PAN_LABEL, ""),
                                     pan.width, pan.height))
    report.inputs.append(InputRecord("ms", MS_LABEL, paths.get(MS_LABEL, ""),
                                     ms.width, ms.height))
    for img in fused:
        report.inputs.append(InputRecord("fused", img.label, paths.get(img.label, ""),
                                         img.width, img.height))

    # reference image metrics
    report.entries.extend(_spatial_entries(MS_LABEL, ms_up, region_set, thresholds))
    report.entries.extend(_snr_to_entries(
        MS_LABEL, snr_region_report(ms_up, region_set), "snr_a"))
    # MS edge histograms at the histogram threshold, for overlay plots
    for band_name in ("R", "G", "B", "L"):
        band = ms_up.band(band_name)
        mask = label_edges(sobel_magnitude(band), hist_threshold, source=band_name)
        hist = build_histogram(band, mask, band_name=band_name)
        report.histograms.append(HistogramRecord(
            MS_LABEL, band_name, hist.scope, tuple(int(c) for c in hist.bins)))

    # sharpness target
    report.entries.extend(_pan_entries(pan, region_set, thresholds))

    # fused inputs, fanned out but merged in input order
    def job(img: MultibandImage):
        return _fused_entries(img.label, img, ms_up, region_set,
                              thresholds, hist_threshold)

    if fused:
        workers = worker_count(len(fused))
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(job, fused))
        else:
            results = [job(img) for img in fused]
        for entries, histograms in results:
            report.entries.extend(entries)
            report.histograms.extend(histograms)

    return report


def load_inputs(pan_path: str, ms_path: str, fused_specs: list[tuple[str, str]]):
    """Read the PAN band, MS image and labeled fused images from disk."""
    pan = netpbm.read_band(pan_path)
    ms = netpbm.read_rgb(ms_path, label=MS_LABEL)
    fused = [netpbm.read_rgb(path, label=label) for label, path in fused_specs]
    paths = {MS_LABEL: str(ms_path), PAN_LABEL: str(pan_path)}
    for label, path in fused_specs:
        paths[label] = str(path)
    return pan, ms, fused, paths


def write_outputs(report: MetricReport, out_dir) -> dict[str, list[str] | str]:
    """Write report.json, report.csv and the chart SVGs into `out_dir`."""
    from .charts import render_charts

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    charts, notes = render_charts(report, out_dir)
    report.notes.extend(notes)

    csv_path = out_dir / "report.csv"
    csv_path.write_text(report.to_csv(), encoding="utf-8")
    json_path = out_dir / "report.json"
    json_path.write_text(report.to_json(), encoding="utf-8")

    return {"json": str(json_path), "csv": str(csv_path), "charts": charts}
