"""Dependency-free SVG rendering of metric reports.

Grouped bar charts (x = method, one bar per series entry) mirror the usual
comparison figures of fusion studies; histogram overlays plot the fused vs
reference edge histograms per band. Output is plain SVG text generated with
fixed float formatting, so identical reports produce identical bytes.
"""

from __future__ import annotations

import html

from .report import MetricReport, HistogramRecord

PALETTE = ("#c0504d", "#4f81bd", "#9bbb59", "#8064a2", "#f79646",
           "#4bacc6", "#2c4d75", "#772c2a")

WIDTH = 640
HEIGHT = 400
MARGIN = {"top": 46, "right": 24, "bottom": 64, "left": 58}


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _color(i: int) -> str:
    return PALETTE[i % len(PALETTE)]


def _axis_scale(vmax: float) -> float:
    return vmax * 1.12 if vmax > 0 else 1.0


def grouped_bar_chart(
    title: str,
    groups: list[str],
    series: list[str],
    values: dict[tuple[str, str], float | None],
) -> str:
    """SVG grouped bar chart: one cluster per group, one bar per series entry.

    Missing cells (value None or absent) leave a gap in the cluster.
    """
    chart_w = WIDTH - MARGIN["left"] - MARGIN["right"]
    chart_h = HEIGHT - MARGIN["top"] - MARGIN["bottom"]
    x0, y0 = MARGIN["left"], MARGIN["top"]

    numeric = [v for v in values.values() if v is not None]
    vmax = _axis_scale(max(numeric) if numeric else 0.0)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.0f}" y="22" text-anchor="middle" font-family="sans-serif" '
        f'font-size="15" font-weight="bold">{html.escape(title)}</text>',
    ]

    # horizontal grid + y labels
    for i in range(5):
        frac = i / 4
        y = y0 + chart_h * (1 - frac)
        label = vmax * frac
        parts.append(
            f'<line x1="{x0}" y1="{_fmt(y)}" x2="{x0 + chart_w}" y2="{_fmt(y)}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x0 - 6}" y="{_fmt(y + 4)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="10" fill="#555555">{label:.3g}</text>'
        )

    group_w = chart_w / max(1, len(groups))
    bar_w = group_w * 0.8 / max(1, len(series))

    for gi, group in enumerate(groups):
        gx = x0 + gi * group_w
        for si, s in enumerate(series):
            value = values.get((group, s))
            if value is None:
                continue
            bh = chart_h * min(value, vmax) / vmax
            bx = gx + group_w * 0.1 + si * bar_w
            by = y0 + chart_h - bh
            parts.append(
                f'<rect x="{_fmt(bx)}" y="{_fmt(by)}" width="{_fmt(bar_w)}" '
                f'height="{_fmt(bh)}" fill="{_color(si)}">'
                f'<title>{html.escape(f"{group} / {s}: {value:.6g}")}</title></rect>'
            )
        parts.append(
            f'<text x="{_fmt(gx + group_w / 2)}" y="{y0 + chart_h + 16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{html.escape(group)}</text>'
        )

    # baseline + legend
    parts.append(
        f'<line x1="{x0}" y1="{y0 + chart_h}" x2="{x0 + chart_w}" y2="{y0 + chart_h}" '
        f'stroke="#333333" stroke-width="1"/>'
    )
    lx = x0
    ly = HEIGHT - 18
    for si, s in enumerate(series):
        parts.append(f'<rect x="{_fmt(lx)}" y="{ly - 9}" width="10" height="10" fill="{_color(si)}"/>')
        parts.append(
            f'<text x="{_fmt(lx + 14)}" y="{ly}" font-family="sans-serif" '
            f'font-size="11">{html.escape(str(s))}</text>'
        )
        lx += 18 + 7 * len(str(s))
    parts.append("</svg>")
    return "\n".join(parts)


def histogram_overlay_chart(
    title: str,
    fused: HistogramRecord,
    reference: HistogramRecord,
) -> str:
    """Overlay of two normalized 256-bin histograms as polylines."""
    chart_w = WIDTH - MARGIN["left"] - MARGIN["right"]
    chart_h = HEIGHT - MARGIN["top"] - MARGIN["bottom"]
    x0, y0 = MARGIN["left"], MARGIN["top"]

    def normalize(bins):
        total = sum(bins)
        if total == 0:
            return [0.0] * 256
        return [b / total for b in bins]

    f_norm = normalize(fused.bins)
    r_norm = normalize(reference.bins)
    vmax = _axis_scale(max(max(f_norm), max(r_norm)))

    def polyline(freqs, color):
        pts = " ".join(
            f"{_fmt(x0 + chart_w * i / 255)},{_fmt(y0 + chart_h * (1 - f / vmax))}"
            for i, f in enumerate(freqs)
        )
        return f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>'

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.0f}" y="22" text-anchor="middle" font-family="sans-serif" '
        f'font-size="15" font-weight="bold">{html.escape(title)}</text>',
        f'<line x1="{x0}" y1="{y0 + chart_h}" x2="{x0 + chart_w}" y2="{y0 + chart_h}" '
        f'stroke="#333333" stroke-width="1"/>',
    ]
    for tick in (0, 64, 128, 192, 255):
        tx = x0 + chart_w * tick / 255
        parts.append(
            f'<text x="{_fmt(tx)}" y="{y0 + chart_h + 16}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="10">{tick}</text>'
        )
    parts.append(polyline(r_norm, "#888888"))
    parts.append(polyline(f_norm, "#c0504d"))
    parts.append(
        f'<text x="{x0}" y="{HEIGHT - 18}" font-family="sans-serif" font-size="11">'
        f'<tspan fill="#c0504d">{html.escape(fused.method)}</tspan>'
        f'<tspan fill="#888888"> vs {html.escape(reference.method)}</tspan></text>'
    )
    parts.append("</svg>")
    return "\n".join(parts)


def _safe(name: str) -> str:
    """Filename-safe version of a user-supplied label."""
    return "".join(c if c.isalnum() or c in "-_@=." else "_" for c in str(name))


def render_charts(report: MetricReport, out_dir) -> tuple[list[str], list[str]]:
    """Write one SVG per metric family; return (written paths, skip notes).

    Families with no numeric values are skipped with a note instead of an
    empty file.
    """
    from pathlib import Path

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[str] = []
    notes: list[str] = []

    def emit(name: str, svg: str | None, family: str):
        if svg is None:
            notes.append(f"chart skipped ({family}): no numeric values")
            return
        path = out_dir / name
        path.write_text(svg, encoding="utf-8")
        written.append(str(path))

    def family_chart(title, entries, series_of, group_of=lambda e: e.method):
        groups: dict[str, None] = {}
        series: dict[str, None] = {}
        values: dict[tuple[str, str], float | None] = {}
        for e in entries:
            g, s = group_of(e), series_of(e)
            groups.setdefault(g, None)
            series.setdefault(s, None)
            values[(g, s)] = e.value
        if not any(v is not None for v in values.values()):
            return None
        return grouped_bar_chart(title, list(groups), list(series), values)

    # Michelson per scope (whole + each region group), series = band
    michelson_scopes: dict[str, None] = {}
    for e in report.select(metric="michelson"):
        michelson_scopes.setdefault(e.scope, None)
    for scope in michelson_scopes:
        entries = report.select(metric="michelson", scope=scope)
        emit(f"michelson_{_safe(scope)}.svg",
             family_chart(f"Michelson contrast ({scope})", entries, lambda e: e.band),
             f"michelson {scope}")

    # Whole-image contrast ratio, series = band
    entries = report.select(metric="csa", scope="whole")
    emit("csa_whole.svg", family_chart("Contrast ratio (whole image)", entries,
                                       lambda e: e.band), "csa whole")

    # Edge CSA and edge rate: one chart per band, series = threshold
    for metric, stem, title in (("csa", "edge_csa", "Edge-region contrast ratio"),
                                ("edge_rate", "edge_rate", "Edge rate")):
        if metric == "csa":
            all_entries = [e for e in report.entries
                           if e.metric == "csa" and e.scope.startswith("edges@")]
        else:
            all_entries = report.select(metric="edge_rate")
        bands: dict[str, None] = {}
        for e in all_entries:
            bands.setdefault(e.band, None)
        for band in bands:
            entries = [e for e in all_entries if e.band == band]
            emit(f"{stem}_{_safe(band)}.svg",
                 family_chart(f"{title}, band {band}", entries,
                              lambda e: f"t={e.threshold}"),
                 f"{stem} {band}")

    # Region SNR: one chart per region group, series = band
    snr_scopes: dict[str, None] = {}
    for e in report.select(metric="snr_a"):
        snr_scopes.setdefault(e.scope, None)
    for scope in snr_scopes:
        entries = report.select(metric="snr_a", scope=scope)
        emit(f"snr_a_{_safe(scope)}.svg",
             family_chart(f"Region SNR ({scope})", entries, lambda e: e.band),
             f"snr_a {scope}")

    # Whole-image SNR, series = band
    entries = report.select(metric="snr_b")
    emit("snr_b.svg", family_chart("Whole-image SNR vs reference", entries,
                                   lambda e: e.band), "snr_b")

    # Histogram deltas, series = band
    entries = report.select(metric="hist_delta")
    emit("hist_delta.svg",
         family_chart(f"Edge-histogram distance (t={report.hist_threshold})",
                      entries, lambda e: e.band),
         "hist_delta")

    # Histogram overlays per (fused method, band)
    by_key: dict[tuple[str, str], HistogramRecord] = {
        (h.method, h.band): h for h in report.histograms
    }
    for h in report.histograms:
        if h.method == "MS":
            continue
        ref = by_key.get(("MS", h.band))
        if ref is None:
            continue
        emit(f"hist_{_safe(h.method)}_{_safe(h.band)}.svg",
             histogram_overlay_chart(
                 f"Edge histogram, band {h.band} ({h.scope})", h, ref),
             f"hist overlay {h.method} {h.band}")

    return written, notes
