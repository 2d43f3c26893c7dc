"""Command-line interface.

Subcommands:

* ``evaluate`` - full metric suite over PAN / MS / fused inputs, writing
  report.json, report.csv and SVG charts.
* ``edges`` / ``csa`` / ``mtf`` / ``snr`` / ``hist`` - single metric
  families printed as CSV rows on stdout.
* ``fixtures`` - write a deterministic synthetic PAN/MS/fused set.
* ``serve`` - launch the HTTP service wrapping the same pipeline.

Exit codes: 0 success, 2 unreadable input file, 3 dimension mismatch,
4 malformed configuration, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv as csv_module
import io
import json
import sys
from pathlib import Path

from . import netpbm
from .contrast import michelson, csa as csa_metric
from .edges import DEFAULT_THRESHOLDS, label_edges, sobel_magnitude, threshold_sweep
from .errors import BoundsError, ConfigError, DimensionMismatchError, IdenticalImagesError
from .histogram import build_histogram
from .pipeline import evaluate_images, load_inputs, write_outputs
from .regions import load_region_set
from .report import TOOL_VERSION
from .snr import snr_region, snr_whole, CONSTANT_REGION, IDENTICAL_IMAGES
from .synth import SceneParams, write_fixture_set

EXIT_OK = 0
EXIT_UNREADABLE = 2
EXIT_DIMENSIONS = 3
EXIT_CONFIG = 4
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage failures exit with the usage code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


class CliError(Exception):
    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


def _parse_thresholds(text: str) -> list[int]:
    try:
        values = [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise CliError(f"thresholds must be integers, got {text!r}", EXIT_USAGE)
    if not values:
        raise CliError("threshold list is empty", EXIT_USAGE)
    if any(b <= a for a, b in zip(values, values[1:])):
        raise CliError(f"thresholds must be strictly increasing, got {values}", EXIT_USAGE)
    if values[0] < 0 or values[-1] > 255:
        raise CliError(f"thresholds must lie in [0, 255], got {values}", EXIT_USAGE)
    return values


def _parse_fused_specs(specs: list[str]) -> list[tuple[str, str]]:
    out = []
    for spec in specs:
        label, sep, path = spec.partition("=")
        if not sep or not label or not path:
            raise CliError(f"--fused needs label=path, got {spec!r}", EXIT_USAGE)
        out.append((label, path))
    labels = [label for label, _ in out]
    dupes = {l for l in labels if labels.count(l) > 1}
    if dupes:
        raise CliError(f"duplicate fused labels: {sorted(dupes)}", EXIT_USAGE)
    reserved = {"MS", "PAN"} & set(labels)
    if reserved:
        raise CliError(f"fused labels {sorted(reserved)} are reserved", EXIT_USAGE)
    return out


def _load_config(path: str | None) -> dict | None:
    if path is None:
        return None
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc}", EXIT_CONFIG)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"config {path} is not valid JSON: {exc}", EXIT_CONFIG)
    if not isinstance(doc, dict):
        raise CliError(f"config {path} must hold a JSON object", EXIT_CONFIG)
    return doc


def _read_band_or_fail(path: str):
    try:
        return netpbm.read_band(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_UNREADABLE)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_UNREADABLE)


def _read_rgb_or_fail(path: str, label: str = ""):
    try:
        return netpbm.read_rgb(path, label=label)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_UNREADABLE)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_UNREADABLE)


def _read_any_bands(path: str) -> list[tuple[str, "object"]]:
    """Load (label, Band) pairs: R/G/B for color inputs, 'gray' for PGM/PNG-L."""
    lower = path.lower()
    if lower.endswith(".ppm"):
        return _read_rgb_or_fail(path).bands()
    if lower.endswith(".pgm"):
        return [("gray", _read_band_or_fail(path))]
    # PNG: try color first, fall back to grayscale
    try:
        return netpbm.read_rgb(path).bands()
    except ValueError:
        pass
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_UNREADABLE)
    return [("gray", _read_band_or_fail(path))]


def _emit_rows(rows: list[list], header: list[str], out_path: str | None):
    buf = io.StringIO()
    writer = csv_module.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    text = buf.getvalue()
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def cmd_evaluate(args) -> int:
    thresholds = _parse_thresholds(args.thresholds)
    fused_specs = _parse_fused_specs(args.fused)
    config = _load_config(args.config)

    try:
        pan, ms, fused, paths = load_inputs(args.pan, args.ms, fused_specs)
    except OSError as exc:
        raise CliError(f"cannot read input: {exc}", EXIT_UNREADABLE)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_UNREADABLE)

    try:
        report = evaluate_images(
            pan, ms, fused,
            thresholds=thresholds,
            hist_threshold=args.hist_threshold,
            region_config=config,
            input_paths=paths,
        )
    except DimensionMismatchError as exc:
        raise CliError(str(exc), EXIT_DIMENSIONS)
    except (ConfigError, BoundsError) as exc:
        raise CliError(str(exc), EXIT_CONFIG)

    try:
        outputs = write_outputs(report, args.out)
    except OSError as exc:
        raise CliError(f"cannot write outputs to {args.out}: {exc}", EXIT_UNREADABLE)
    print(f"report: {outputs['json']}")
    print(f"csv:    {outputs['csv']}")
    print(f"charts: {len(outputs['charts'])} SVG files in {args.out}")
    for note in report.notes:
        print(f"note:   {note}")
    return EXIT_OK


def cmd_edges(args) -> int:
    thresholds = _parse_thresholds(args.thresholds)
    bands = _read_any_bands(args.image)
    rows = []
    for label, band in bands:
        sweep = threshold_sweep(band, thresholds, source=label)
        for t, mask, rate in sweep:
            rows.append([label, t, _fmt(rate), mask.edge_count()])
        if args.export_masks:
            out = Path(args.export_masks)
            out.mkdir(parents=True, exist_ok=True)
            for t, mask, _ in sweep:
                netpbm.write_pgm(mask.to_band(), out / f"edges_{label}_t{t}.pgm")
    _emit_rows(rows, ["band", "threshold", "rate", "edge_pixels"], args.out)
    return EXIT_OK


def cmd_csa(args) -> int:
    thresholds = _parse_thresholds(args.thresholds)
    bands = _read_any_bands(args.image)
    rows = []
    for label, band in bands:
        try:
            rows.append([label, "whole", "", _fmt(csa_metric(band.pixels())), band.width * band.height])
        except ValueError as exc:
            rows.append([label, "whole", "", str(exc), band.width * band.height])
        for t, mask, _ in threshold_sweep(band, thresholds, source=label):
            for scope, px in ((f"edges@{t}", band.data[mask.labels]),
                              (f"homogeneous@{t}", band.data[~mask.labels])):
                if px.size == 0:
                    rows.append([label, scope, t, "no pixels", 0])
                    continue
                try:
                    rows.append([label, scope, t, _fmt(csa_metric(px)), px.size])
                except ValueError as exc:
                    rows.append([label, scope, t, str(exc), px.size])
    _emit_rows(rows, ["band", "scope", "threshold", "value", "n"], args.out)
    return EXIT_OK


def cmd_mtf(args) -> int:
    config = _load_config(args.config)
    bands = _read_any_bands(args.image)
    width, height = bands[0][1].width, bands[0][1].height
    try:
        region_set = load_region_set(config, (width, height))
    except (ConfigError, BoundsError) as exc:
        raise CliError(str(exc), EXIT_CONFIG)
    rows = []
    for label, band in bands:
        for group_name, pixels in region_set.group_pixels(band):
            try:
                rows.append([label, group_name, _fmt(michelson(pixels)), pixels.size])
            except ValueError as exc:
                rows.append([label, group_name, str(exc), pixels.size])
        if args.whole:
            try:
                rows.append([label, "whole", _fmt(michelson(band.pixels())),
                             band.width * band.height])
            except ValueError as exc:
                rows.append([label, "whole", str(exc), band.width * band.height])
    _emit_rows(rows, ["band", "scope", "value", "n"], args.out)
    return EXIT_OK


def cmd_snr(args) -> int:
    rows = []
    if args.whole:
        if not args.fused or not args.ms:
            raise CliError("snr --whole needs --fused and --ms", EXIT_USAGE)
        fused = _read_rgb_or_fail(args.fused, label="fused")
        ms = _read_rgb_or_fail(args.ms, label="MS")
        if (fused.width, fused.height) != (ms.width, ms.height):
            raise CliError(
                f"fused {fused.width}x{fused.height} does not match "
                f"ms {ms.width}x{ms.height}", EXIT_DIMENSIONS)
        for (label, f_band), (_, m_band) in zip(fused.bands(), ms.bands()):
            try:
                rows.append([label, "whole", _fmt(snr_whole(f_band, m_band)), args.ms])
            except IdenticalImagesError:
                rows.append([label, "whole", IDENTICAL_IMAGES, args.ms])
        _emit_rows(rows, ["band", "scope", "value", "reference"], args.out)
        return EXIT_OK

    if not args.image:
        raise CliError("snr needs --image (or --whole with --fused/--ms)", EXIT_USAGE)
    config = _load_config(args.config)
    bands = _read_any_bands(args.image)
    width, height = bands[0][1].width, bands[0][1].height
    try:
        region_set = load_region_set(config, (width, height))
    except (ConfigError, BoundsError) as exc:
        raise CliError(str(exc), EXIT_CONFIG)
    for label, band in bands:
        for group_name, pixels in region_set.group_pixels(band):
            try:
                rows.append([label, group_name, _fmt(snr_region(pixels))])
            except ValueError:
                rows.append([label, group_name, CONSTANT_REGION])
    _emit_rows(rows, ["band", "scope", "value"], args.out)
    return EXIT_OK


def cmd_hist(args) -> int:
    if args.edges is not None and not 0 <= args.edges <= 255:
        raise CliError(f"--edges threshold must lie in [0, 255], got {args.edges}",
                       EXIT_USAGE)
    bands = _read_any_bands(args.image)
    rows = []
    for label, band in bands:
        if args.edges is not None:
            mask = label_edges(sobel_magnitude(band), args.edges, source=label)
            hist = build_histogram(band, mask, band_name=label)
        else:
            hist = build_histogram(band, band_name=label)
        for intensity in range(256):
            rows.append([label, hist.scope, intensity, int(hist.bins[intensity])])
    _emit_rows(rows, ["band", "scope", "intensity", "count"], args.out)
    return EXIT_OK


def cmd_fixtures(args) -> int:
    try:
        params = SceneParams(
            width=args.width,
            height=args.height,
            detail_density=args.density,
            seed=args.seed,
            blur_radius=args.blur_radius,
        )
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE)
    try:
        hf_gains = [float(v) for v in args.hf_gains.split(",") if v.strip() != ""]
        shifts = [float(v) for v in args.shifts.split(",") if v.strip() != ""]
    except ValueError:
        raise CliError(
            f"--hf-gains/--shifts must be comma-separated numbers, "
            f"got {args.hf_gains!r} / {args.shifts!r}", EXIT_USAGE)
    files = write_fixture_set(args.out, params, hf_gains, shifts, args.shift_band)
    for f in files:
        print(f)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="fusionqa",
                     description="Spatial and spectral quality evaluation of pan-sharpened imagery")
    parser.add_argument("--version", action="version", version=f"fusionqa {TOOL_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evaluate", help="run the full metric suite")
    p.add_argument("--pan", required=True, help="panchromatic band (PGM or grayscale PNG)")
    p.add_argument("--ms", required=True, help="multispectral image (PPM or RGB PNG)")
    p.add_argument("--fused", action="append", required=True, metavar="LABEL=PATH",
                   help="fused image with its method label; repeatable")
    p.add_argument("--config", help="region configuration JSON")
    p.add_argument("--out", default="fusionqa_report", help="output directory")
    p.add_argument("--thresholds", default=",".join(str(t) for t in DEFAULT_THRESHOLDS))
    p.add_argument("--hist-threshold", type=int, default=20)
    p.set_defaults(handler=cmd_evaluate)

    p = sub.add_parser("edges", help="edge rates per band and threshold")
    p.add_argument("--image", required=True)
    p.add_argument("--thresholds", default=",".join(str(t) for t in DEFAULT_THRESHOLDS))
    p.add_argument("--export-masks", help="directory for edge-mask PGM images")
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(handler=cmd_edges)

    p = sub.add_parser("csa", help="contrast ratio: whole image and edge/homogeneous populations")
    p.add_argument("--image", required=True)
    p.add_argument("--thresholds", default=",".join(str(t) for t in DEFAULT_THRESHOLDS))
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(handler=cmd_csa)

    p = sub.add_parser("mtf", help="Michelson contrast over region groups")
    p.add_argument("--image", required=True)
    p.add_argument("--config", help="region configuration JSON")
    p.add_argument("--whole", action=argparse.BooleanOptionalAction, default=True,
                   help="include the whole-image value")
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(handler=cmd_mtf)

    p = sub.add_parser("snr", help="region SNR, or whole-image SNR with --whole")
    p.add_argument("--image", help="image for region SNR")
    p.add_argument("--config", help="region configuration JSON")
    p.add_argument("--whole", action="store_true", help="whole-image fused-vs-MS variant")
    p.add_argument("--fused", help="fused image (with --whole)")
    p.add_argument("--ms", help="reference MS image (with --whole)")
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(handler=cmd_snr)

    p = sub.add_parser("hist", help="brightness histograms, optionally edge-restricted")
    p.add_argument("--image", required=True)
    p.add_argument("--edges", type=int, metavar="THRESHOLD",
                   help="restrict to Sobel edge pixels at this threshold")
    p.add_argument("--out", help="write CSV here instead of stdout")
    p.set_defaults(handler=cmd_hist)

    p = sub.add_parser("fixtures", help="write synthetic PAN/MS/fused fixtures")
    p.add_argument("--out", required=True, help="target directory")
    p.add_argument("--width", type=int, default=600)
    p.add_argument("--height", type=int, default=525)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--density", type=float, default=0.9)
    p.add_argument("--blur-radius", type=int, default=2)
    p.add_argument("--hf-gains", default="0.5,1,2")
    p.add_argument("--shifts", default="5,15,30")
    p.add_argument("--shift-band", default="B", choices=("R", "G", "B"))
    p.set_defaults(handler=cmd_fixtures)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(handler=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except CliError as exc:
        print(f"fusionqa: {exc}", file=sys.stderr)
        return exc.exit_code
    except DimensionMismatchError as exc:
        print(f"fusionqa: {exc}", file=sys.stderr)
        return EXIT_DIMENSIONS
    except (ConfigError, BoundsError) as exc:
        print(f"fusionqa: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
