"""Spatial and spectral quality evaluation of pan-sharpened satellite imagery."""

from .contrast import ContrastResult, csa, csa_report, michelson, michelson_report
from .edges import (
    DEFAULT_THRESHOLDS,
    EdgeMask,
    GradientField,
    edge_rate,
    label_edges,
    sobel_magnitude,
    threshold_sweep,
)
from .histogram import Histogram256, build_histogram, edge_histogram_suite, histogram_delta
from .netpbm import read_band, read_pgm, read_ppm, read_rgb, write_pgm, write_ppm
from .pipeline import evaluate_images, write_outputs
from .raster import (
    Band,
    MultibandImage,
    PixelStats,
    RegionSpec,
    extract_block,
    l_component,
    pixel_stats,
    upsample_nearest,
)
from .regions import RegionSet, find_homogeneous_blocks, load_region_set
from .report import MetricEntry, MetricReport
from .snr import SnrResult, snr_region, snr_region_report, snr_whole, snr_whole_report
from .synth import SceneParams, generate_scene, simulate_fusion

__version__ = "0.1.0"

__all__ = [
    "Band",
    "ContrastResult",
    "DEFAULT_THRESHOLDS",
    "EdgeMask",
    "GradientField",
    "Histogram256",
    "MetricEntry",
    "MetricReport",
    "MultibandImage",
    "PixelStats",
    "RegionSet",
    "RegionSpec",
    "SceneParams",
    "SnrResult",
    "build_histogram",
    "csa",
    "csa_report",
    "edge_histogram_suite",
    "edge_rate",
    "evaluate_images",
    "extract_block",
    "find_homogeneous_blocks",
    "generate_scene",
    "histogram_delta",
    "l_component",
    "label_edges",
    "load_region_set",
    "michelson",
    "michelson_report",
    "pixel_stats",
    "read_band",
    "read_pgm",
    "read_ppm",
    "read_rgb",
    "simulate_fusion",
    "snr_region",
    "snr_region_report",
    "snr_whole",
    "snr_whole_report",
    "sobel_magnitude",
    "threshold_sweep",
    "upsample_nearest",
    "write_outputs",
    "write_pgm",
    "write_ppm",
]
