"""Evaluation region configuration and automatic homogeneous-block search.

A RegionSet is a validated collection of named rectangular blocks. Blocks
sharing a group name are pooled: their pixels form one population and the
group reports a single statistic. The default set mirrors the classic
layout of two 30x30 blocks plus seven 10x10 blocks evaluated together; the
default coordinates are arbitrary and sized for a 600x525 scene.

Config document schema (JSON)::

    { "regions": [ {"name": str, "x0": int, "y0": int,
                    "w": int, "h": int, "group": str (optional)} ] }
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BoundsError, ConfigError
from .raster import Band, RegionSpec, extract_block

def default_region_specs() -> list[RegionSpec]:
    """Built-in region layout: b1 and b2 (30x30), b3 = seven pooled 10x10 blocks."""
    specs = [
        RegionSpec("b1", 40, 40, 30, 30),
        RegionSpec("b2", 300, 200, 30, 30),
    ]
    b3_origins = [(60, 300), (140, 330), (220, 360), (300, 390),
                  (380, 420), (460, 450), (520, 480)]
    for i, (x0, y0) in enumerate(b3_origins, start=1):
        specs.append(RegionSpec(f"b3_{i}", x0, y0, 10, 10, group="b3"))
    return specs


@dataclass(frozen=True)
class RegionSet:
    """Validated, in-bounds region specs with pooling groups."""

    specs: tuple[RegionSpec, ...]

    def __post_init__(self):
        names = [s.name for s in self.specs]
        dupes = {n for n in names if names.count(n) > 1}
        if dupes:
            raise ConfigError(f"duplicate region names: {sorted(dupes)}")
        object.__setattr__(self, "specs", tuple(self.specs))

    def group_names(self) -> list[str]:
        """Group names in first-appearance order."""
        seen: dict[str, None] = {}
        for s in self.specs:
            seen.setdefault(s.group, None)
        return list(seen)

    def groups(self) -> list[tuple[str, list[RegionSpec]]]:
        out: dict[str, list[RegionSpec]] = {}
        for s in self.specs:
            out.setdefault(s.group, []).append(s)
        return list(out.items())

    def check_bounds(self, width: int, height: int) -> None:
        for s in self.specs:
            s.check_bounds(width, height)

    def group_pixels(self, band: Band):
        """Yield (group_name, pooled pixel array) per group, in order."""
        for group_name, members in self.groups():
            pixels = np.concatenate([extract_block(band, s).pixels() for s in members])
            yield group_name, pixels


def load_region_set(config: dict | None, image_dims: tuple[int, int]) -> RegionSet:
    """Build a RegionSet from a parsed config document; None selects defaults.

    Every block is validated against `image_dims` (width, height); errors
    name the offending entry.
    """
    width, height = image_dims
    if config is None or config == {} or config.get("regions") in (None, []):
        specs = default_region_specs()
    else:
        entries = config.get("regions")
        if not isinstance(entries, list):
            raise ConfigError("region config must hold a 'regions' list")
        specs = []
        for i, entry in enumerate(entries):
            if not isinstance(entry, dict):
                raise ConfigError(f"region entry #{i} is not an object")
            missing = [k for k in ("name", "x0", "y0", "w", "h") if k not in entry]
            if missing:
                raise ConfigError(f"region entry #{i} missing fields: {missing}")
            try:
                specs.append(RegionSpec(
                    name=str(entry["name"]),
                    x0=int(entry["x0"]),
                    y0=int(entry["y0"]),
                    w=int(entry["w"]),
                    h=int(entry["h"]),
                    group=str(entry.get("group") or ""),
                ))
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"region entry #{i} malformed: {exc}") from exc

    region_set = RegionSet(tuple(specs))
    for s in region_set.specs:
        try:
            s.check_bounds(width, height)
        except BoundsError as exc:
            raise BoundsError(str(exc)) from None
    return region_set


def find_homogeneous_blocks(band: Band, block_w: int, block_h: int, count: int) -> list[RegionSpec]:
    """Pick the `count` lowest-variance blocks on a block-aligned grid.

    The grid stride equals the block size, so returned blocks never overlap.
    Ties resolve in scan order (row-major), making the result deterministic.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if block_w > band.width or block_h > band.height:
        raise BoundsError(
            f"block {block_w}x{block_h} does not fit in band {band.width}x{band.height}"
        )
    rows = band.height // block_h
    cols = band.width // block_w
    if count > rows * cols:
        raise ValueError(
            f"requested {count} blocks but the {cols}x{rows} grid has only {rows * cols} cells"
        )

    h, w = rows * block_h, cols * block_w
    blocks = band.data[:h, :w].reshape(rows, block_h, cols, block_w).swapaxes(1, 2)
    variances = blocks.astype(np.float64).var(axis=(2, 3), ddof=0).ravel()

    order = np.argsort(variances, kind="stable")[:count]
    specs = []
    for rank, idx in enumerate(order, start=1):
        r, c = divmod(int(idx), cols)
        specs.append(RegionSpec(f"auto_{rank}", c * block_w, r * block_h, block_w, block_h))
    return specs
