"""Deterministic synthetic PAN / MS / fused fixtures.

Real satellite inputs are proprietary, so the pipeline is exercised on
generated scenes instead. A scene is a full-resolution panchromatic pattern:
a gentle mid-tone ramp, smooth low-frequency texture, and high-contrast
rectangles and lines snapped to the resampling grid. The multispectral
companion is a per-band tinted copy that is box-blurred, decimated by 5 and
nearest-neighbor upsampled back, which reproduces the resolution gap the
metrics are meant to detect.

``simulate_fusion`` then stands in for a pan-sharpening method: it injects
the panchromatic high-frequency residual (gain-scaled) and an optional
per-band intensity shift. Gain 0 with zero shift returns the MS unchanged.
Everything is reproducible bit-for-bit from the seed.

The default scene is shaped so that the standard quality orderings hold
with margin: feature levels sit far outside the background range (edge
labels stay decisive under resampling), features align to the resolution
grid (the degraded MS keeps a stable edge set), and the smooth texture
spreads histogram lobes (so shifted histograms separate gradually).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError
from .raster import Band, MultibandImage, clamp_u8, upsample_nearest

RESOLUTION_RATIO = 5

# Per-band linear tints (gain, offset) keeping headroom for spectral shifts.
BAND_TINTS = (("R", 0.90, 8.0), ("G", 0.80, 16.0), ("B", 0.70, 12.0))

RAMP_RANGE = (90.0, 150.0)
DARK_LEVELS = (5, 51)       # rng.integers bounds, exclusive high
BRIGHT_LEVELS = (205, 251)
TEXTURE_CELL = 25
TEXTURE_AMPLITUDE = 12.0


@dataclass(frozen=True)
class SceneParams:
    """Knobs of the synthetic scene and its simulated fusion."""

    width: int = 600
    height: int = 525
    detail_density: float = 0.9     # features per 100x100 pixel area
    seed: int = 7
    spectral_shift: tuple[float, float, float] = (0.0, 0.0, 0.0)
    hf_gain: float = 1.0
    blur_radius: int = 2

    def __post_init__(self):
        if self.width < RESOLUTION_RATIO or self.height < RESOLUTION_RATIO:
            raise ValueError(f"scene must be at least {RESOLUTION_RATIO} pixels per side")
        if self.width % RESOLUTION_RATIO or self.height % RESOLUTION_RATIO:
            raise ValueError(
                f"scene dimensions must be multiples of {RESOLUTION_RATIO}, "
                f"got {self.width}x{self.height}"
            )
        if self.hf_gain < 0:
            raise ValueError("hf_gain must be >= 0")
        if self.blur_radius < 0:
            raise ValueError("blur_radius must be >= 0")


def box_blur(band: Band, radius: int) -> Band:
    """Mean filter over a (2r+1)^2 replicate-padded window, rounded half-up.

    Window sums come from an exact integer summed-area table, so the result
    is deterministic across platforms.
    """
    if radius == 0:
        return band
    k = 2 * radius + 1
    padded = np.pad(band.data.astype(np.int64), radius, mode="edge")
    sat = np.zeros((padded.shape[0] + 1, padded.shape[1] + 1), dtype=np.int64)
    sat[1:, 1:] = padded.cumsum(axis=0).cumsum(axis=1)
    h, w = band.shape
    sums = sat[k:, k:] - sat[:-k, k:] - sat[k:, :-k] + sat[:-k, :-k]
    assert sums.shape == (h, w)
    return Band(clamp_u8(sums / (k * k)))


def _smooth_texture(rng: np.random.Generator, w: int, h: int) -> np.ndarray:
    """Bilinear interpolation of a coarse random grid: sub-threshold gradients."""
    cell, amp = TEXTURE_CELL, TEXTURE_AMPLITUDE
    coarse = rng.uniform(-amp, amp, size=(h // cell + 2, w // cell + 2))
    ys = np.arange(h) / cell
    xs = np.arange(w) / cell
    y0 = ys.astype(int)
    x0 = xs.astype(int)
    fy = (ys - y0)[:, None]
    fx = (xs - x0)[None, :]
    c00 = coarse[np.ix_(y0, x0)]
    c01 = coarse[np.ix_(y0, x0 + 1)]
    c10 = coarse[np.ix_(y0 + 1, x0)]
    c11 = coarse[np.ix_(y0 + 1, x0 + 1)]
    return c00 * (1 - fy) * (1 - fx) + c01 * (1 - fy) * fx + c10 * fy * (1 - fx) + c11 * fy * fx


def _snap(value) -> int:
    return int(value) // RESOLUTION_RATIO * RESOLUTION_RATIO


def _draw_features(rng: np.random.Generator, canvas: np.ndarray, density: float) -> None:
    h, w = canvas.shape
    n_features = max(1, int(round(density * (w * h) / 10000.0)))

    def feature_level() -> float:
        bounds = DARK_LEVELS if rng.integers(0, 2) == 0 else BRIGHT_LEVELS
        return float(rng.integers(*bounds))

    rect_max_w = max(51, w // 4)
    rect_max_h = max(51, h // 4)
    for _ in range(n_features):
        kind = rng.integers(0, 3)
        level = feature_level()
        if kind <= 1:
            # filled rectangle, grid-aligned so resampling preserves its body
            rw = min(_snap(rng.integers(50, rect_max_w)), w)
            rh = min(_snap(rng.integers(50, rect_max_h)), h)
            rw, rh = max(rw, RESOLUTION_RATIO), max(rh, RESOLUTION_RATIO)
            x0 = _snap(rng.integers(0, w - rw + 1))
            y0 = _snap(rng.integers(0, h - rh + 1))
            canvas[y0 : y0 + rh, x0 : x0 + rw] = level
        elif kind == 2 and h > RESOLUTION_RATIO:
            # horizontal bar, one grid row thick
            y0 = _snap(rng.integers(0, h - RESOLUTION_RATIO + 1))
            x0 = _snap(rng.integers(0, max(1, w // 2)))
            x1 = _snap(rng.integers(min(x0 + w // 4, w), w + 1))
            if x1 > x0:
                canvas[y0 : y0 + RESOLUTION_RATIO, x0:x1] = level
        elif w > RESOLUTION_RATIO:
            # vertical bar, one grid column thick
            x0 = _snap(rng.integers(0, w - RESOLUTION_RATIO + 1))
            y0 = _snap(rng.integers(0, max(1, h // 2)))
            y1 = _snap(rng.integers(min(y0 + h // 4, h), h + 1))
            if y1 > y0:
                canvas[y0:y1, x0 : x0 + RESOLUTION_RATIO] = level


def generate_scene(params: SceneParams) -> tuple[Band, MultibandImage]:
    """Build the panchromatic band and its degraded multispectral companion."""
    rng = np.random.default_rng(params.seed)
    w, h = params.width, params.height

    columns = np.linspace(RAMP_RANGE[0], RAMP_RANGE[1], w)
    canvas = np.tile(columns, (h, 1))
    _draw_features(rng, canvas, params.detail_density)
    canvas += _smooth_texture(rng, w, h)

    pan = Band(clamp_u8(canvas))

    ms_bands = {}
    for band_name, gain, offset in BAND_TINTS:
        tinted = Band(clamp_u8(pan.data.astype(np.float64) * gain + offset))
        blurred = box_blur(tinted, params.blur_radius)
        low = Band(blurred.data[::RESOLUTION_RATIO, ::RESOLUTION_RATIO].copy())
        ms_bands[band_name] = upsample_nearest(low, RESOLUTION_RATIO)

    ms = MultibandImage(ms_bands["R"], ms_bands["G"], ms_bands["B"], label="MS")
    return pan, ms


def simulate_fusion(
    pan: Band,
    ms: MultibandImage,
    hf_gain: float,
    spectral_shift: tuple[float, float, float] = (0.0, 0.0, 0.0),
    blur_radius: int = 2,
    label: str = "",
) -> MultibandImage:
    """Inject panchromatic high frequencies and per-band shifts into the MS.

    Per band: clamp(ms + hf_gain * (pan - box_blur(pan)) + shift). The
    identity case (gain 0, zero shift) returns the MS bands pixel-exact.
    """
    if pan.shape != (ms.height, ms.width):
        raise DimensionMismatchError(
            f"pan {pan.width}x{pan.height} does not match ms {ms.width}x{ms.height}"
        )
    if hf_gain == 0.0 and not any(spectral_shift):
        return MultibandImage(ms.r, ms.g, ms.b, label=label or ms.label)

    highpass = pan.data.astype(np.float64) - box_blur(pan, blur_radius).data.astype(np.float64)
    fused = {}
    for (band_name, band), shift in zip(ms.bands(), spectral_shift):
        values = band.data.astype(np.float64) + hf_gain * highpass + shift
        fused[band_name] = Band(clamp_u8(values))
    return MultibandImage(fused["R"], fused["G"], fused["B"],
                          label=label or f"fused(g={hf_gain:g})")


def write_fixture_set(
    out_dir,
    params: SceneParams = SceneParams(),
    hf_gains=(0.5, 1.0, 2.0),
    shifts=(5.0, 15.0, 30.0),
    shift_band: str = "B",
) -> list[str]:
    """Generate a scene and write pan.pgm, ms.ppm and fused_*.ppm fixtures.

    One fused image per high-frequency gain, plus one per spectral shift
    applied to `shift_band` at gain 0. Returns the written paths.
    """
    from pathlib import Path

    from . import netpbm

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    pan, ms = generate_scene(params)

    written = []

    def save_band(band, name):
        path = out_dir / name
        netpbm.write_pgm(band, path)
        written.append(str(path))

    def save_rgb(img, name):
        path = out_dir / name
        netpbm.write_ppm(img, path)
        written.append(str(path))

    save_band(pan, "pan.pgm")
    save_rgb(ms, "ms.ppm")

    for gain in hf_gains:
        fused = simulate_fusion(pan, ms, gain, blur_radius=params.blur_radius)
        save_rgb(fused, f"fused_hf{gain:g}.ppm")

    band_index = {"R": 0, "G": 1, "B": 2}
    if shift_band not in band_index:
        raise ValueError(f"shift band must be R, G or B, got {shift_band!r}")
    for shift in shifts:
        offsets = [0.0, 0.0, 0.0]
        offsets[band_index[shift_band]] = float(shift)
        fused = simulate_fusion(pan, ms, 0.0, tuple(offsets),
                                blur_radius=params.blur_radius)
        save_rgb(fused, f"fused_shift{shift:g}{shift_band}.ppm")

    return written
