"""Binary PGM (P5) / PPM (P6) readers and writers, plus PNG convenience input.

The netpbm path is bit-exact: headers may contain comment lines, samples are
one byte each, and write-then-read reproduces every pixel. Files that declare
a 6-bit maxval (63) are left-shifted by two on load so downstream metrics
always see the full [0, 255] scale; everything else must declare maxval 255.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np

from .raster import Band, MultibandImage


def _read_header_token(stream: io.BufferedIOBase) -> bytes:
    """Next whitespace-delimited header token, skipping '#' comments.

    A comment's terminating newline also delimits any token in progress.
    """
    token = b""
    while True:
        ch = stream.read(1)
        if ch == b"":
            raise ValueError("truncated netpbm header")
        if ch == b"#":
            while ch not in (b"\n", b"\r", b""):
                ch = stream.read(1)
            if token:
                return token
            continue
        if ch.isspace():
            if token:
                return token
            continue
        token += ch


def _parse_header(stream: io.BufferedIOBase, path: str) -> tuple[bytes, int, int, int]:
    magic = stream.read(2)
    if magic not in (b"P5", b"P6"):
        raise ValueError(f"{path}: not a binary PGM/PPM file (magic {magic!r})")
    try:
        width = int(_read_header_token(stream))
        height = int(_read_header_token(stream))
        maxval = int(_read_header_token(stream))
    except ValueError as exc:
        raise ValueError(f"{path}: malformed netpbm header: {exc}") from exc
    if width < 1 or height < 1:
        raise ValueError(f"{path}: invalid dimensions {width}x{height}")
    if maxval not in (255, 63):
        raise ValueError(f"{path}: unsupported maxval {maxval} (expected 255, or 63 for 6-bit sources)")
    return magic, width, height, maxval


def _read_raster(stream, count: int, path: str) -> np.ndarray:
    raw = stream.read(count)
    if len(raw) != count:
        raise ValueError(f"{path}: truncated raster, expected {count} bytes got {len(raw)}")
    return np.frombuffer(raw, dtype=np.uint8)


def _rescale(samples: np.ndarray, maxval: int) -> np.ndarray:
    # 6-bit sources are shifted onto the 8-bit scale the thresholds assume.
    if maxval == 63:
        return (samples.astype(np.uint16) << 2).astype(np.uint8)
    return samples


def read_pgm(path: str | Path) -> Band:
    """Load a binary PGM (P5) file as a single band."""
    path = str(path)
    with open(path, "rb") as fh:
        magic, width, height, maxval = _parse_header(fh, path)
        if magic != b"P5":
            raise ValueError(f"{path}: expected PGM (P5), found PPM (P6)")
        samples = _read_raster(fh, width * height, path)
    return Band(_rescale(samples, maxval).reshape(height, width))


def read_ppm(path: str | Path, label: str = "") -> MultibandImage:
    """Load a binary PPM (P6) file as an RGB image."""
    path = str(path)
    with open(path, "rb") as fh:
        magic, width, height, maxval = _parse_header(fh, path)
        if magic != b"P6":
            raise ValueError(f"{path}: expected PPM (P6), found PGM (P5)")
        samples = _read_raster(fh, width * height * 3, path)
    rgb = _rescale(samples, maxval).reshape(height, width, 3)
    return MultibandImage(
        r=Band(rgb[:, :, 0].copy()),
        g=Band(rgb[:, :, 1].copy()),
        b=Band(rgb[:, :, 2].copy()),
        label=label or Path(path).stem,
    )


def write_pgm(band: Band, path: str | Path) -> None:
    """Write a band as binary PGM (P5), maxval 255."""
    header = f"P5\n{band.width} {band.height}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(band.data.tobytes())


def write_ppm(img: MultibandImage, path: str | Path) -> None:
    """Write an RGB image as binary PPM (P6), maxval 255."""
    header = f"P6\n{img.width} {img.height}\n255\n".encode("ascii")
    rgb = np.stack([img.r.data, img.g.data, img.b.data], axis=-1)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(rgb.tobytes())


def _read_png(path: str):
    from PIL import Image

    with Image.open(path) as im:
        if im.mode == "L":
            return np.asarray(im, dtype=np.uint8)
        if im.mode == "RGB":
            return np.asarray(im, dtype=np.uint8)
        raise ValueError(f"{path}: unsupported PNG mode {im.mode!r} (need 8-bit L or RGB)")


def read_band(path: str | Path) -> Band:
    """Load a single-band image: PGM, or grayscale PNG as convenience."""
    path = str(path)
    if path.lower().endswith(".png"):
        arr = _read_png(path)
        if arr.ndim != 2:
            raise ValueError(f"{path}: expected grayscale PNG for a single band")
        return Band(arr)
    return read_pgm(path)


def read_rgb(path: str | Path, label: str = "") -> MultibandImage:
    """Load an RGB image: PPM, or RGB PNG as convenience."""
    path = str(path)
    if path.lower().endswith(".png"):
        arr = _read_png(path)
        if arr.ndim != 3:
            raise ValueError(f"{path}: expected RGB PNG for a multiband image")
        return MultibandImage(
            r=Band(arr[:, :, 0].copy()),
            g=Band(arr[:, :, 1].copy()),
            b=Band(arr[:, :, 2].copy()),
            label=label or Path(path).stem,
        )
    return read_ppm(path, label=label)
