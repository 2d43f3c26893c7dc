"""Naive reference implementations used to cross-check the fast paths.

Everything here is deliberately written as plain double loops over Python
scalars, independent of the package internals, so the two routes can only
agree by computing the same mathematics.
"""

import math


def naive_mean(values):
    values = list(values)
    return sum(values) / len(values)


def naive_std(values):
    values = list(values)
    mu = naive_mean(values)
    return math.sqrt(sum((v - mu) ** 2 for v in values) / len(values))


def naive_michelson(values):
    vmax, vmin = max(values), min(values)
    return (vmax - vmin) / (vmax + vmin)


def naive_csa(values):
    return naive_std(values) / naive_mean(values)


def naive_snr_region(values):
    return naive_mean(values) / naive_std(values)


def naive_sobel(grid):
    """Replicate-padded 3x3 Sobel magnitudes, one pixel at a time."""
    h = len(grid)
    w = len(grid[0])

    def at(r, c):
        r = min(max(r, 0), h - 1)
        c = min(max(c, 0), w - 1)
        return float(grid[r][c])

    out = [[0.0] * w for _ in range(h)]
    for r in range(h):
        for c in range(w):
            gx = (
                (at(r - 1, c + 1) + 2 * at(r, c + 1) + at(r + 1, c + 1))
                - (at(r - 1, c - 1) + 2 * at(r, c - 1) + at(r + 1, c - 1))
            )
            gy = (
                (at(r + 1, c - 1) + 2 * at(r + 1, c) + at(r + 1, c + 1))
                - (at(r - 1, c - 1) + 2 * at(r - 1, c) + at(r - 1, c + 1))
            )
            out[r][c] = math.sqrt(gx * gx + gy * gy)
    return out


def naive_snr_whole(fused_grid, ref_grid):
    signal = 0.0
    noise = 0.0
    for frow, mrow in zip(fused_grid, ref_grid):
        for f, m in zip(frow, mrow):
            signal += float(f) * float(f)
            noise += (float(f) - float(m)) ** 2
    return math.sqrt(signal / noise)


def naive_histogram(values):
    bins = [0] * 256
    for v in values:
        bins[int(v)] += 1
    return bins


def naive_tv_delta(bins1, bins2):
    t1, t2 = sum(bins1), sum(bins2)
    return 0.5 * sum(abs(a / t1 - b / t2) for a, b in zip(bins1, bins2))


def naive_upsample(grid, factor):
    h = len(grid)
    w = len(grid[0])
    return [
        [grid[r // factor][c // factor] for c in range(w * factor)]
        for r in range(h * factor)
    ]


def naive_box_blur(grid, radius):
    """Replicate-padded mean filter with round-half-up."""
    h = len(grid)
    w = len(grid[0])

    def at(r, c):
        r = min(max(r, 0), h - 1)
        c = min(max(c, 0), w - 1)
        return int(grid[r][c])

    out = [[0] * w for _ in range(h)]
    k = 2 * radius + 1
    for r in range(h):
        for c in range(w):
            total = 0
            for dr in range(-radius, radius + 1):
                for dc in range(-radius, radius + 1):
                    total += at(r + dr, c + dc)
            out[r][c] = min(255, max(0, math.floor(total / (k * k) + 0.5)))
    return out


def naive_block_variances(grid, block_w, block_h):
    """Variance per grid-aligned block, row-major scan order."""
    h = len(grid)
    w = len(grid[0])
    rows = h // block_h
    cols = w // block_w
    out = []
    for br in range(rows):
        for bc in range(cols):
            values = [
                grid[br * block_h + r][bc * block_w + c]
                for r in range(block_h)
                for c in range(block_w)
            ]
            mu = naive_mean(values)
            out.append(sum((v - mu) ** 2 for v in values) / len(values))
    return out
