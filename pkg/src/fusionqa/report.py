"""Structured evaluation report and its JSON / CSV serialization.

A MetricReport gathers every metric entry of one evaluation run: each entry
is addressable by (method, metric, band, scope) and holds either a numeric
value or an explicit marker note, never a silent omission. CSV rows carry
values at 6 significant digits; JSON keeps full precision and additionally
embeds the edge-restricted histograms. JSON round-trips losslessly.

The timestamp lives only in the JSON document; report.csv and the rendered
charts are byte-deterministic functions of the inputs.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field, asdict

TOOL_VERSION = "0.1.0"

CSV_COLUMNS = ("method", "metric", "band", "scope", "threshold", "value", "n", "reference")


@dataclass(frozen=True)
class MetricEntry:
    """One metric cell: a value or an explicit marker for (method, band, scope)."""

    method: str
    metric: str                 # michelson | csa | edge_rate | snr_a | snr_b | hist_delta
    band: str                   # R | G | B | L | PAN
    scope: str                  # whole | region group | edges@<t> | homogeneous@<t>
    value: float | None
    n: int | None = None
    threshold: int | None = None
    reference: str | None = None
    note: str | None = None


@dataclass(frozen=True)
class InputRecord:
    """Provenance of one input image."""

    role: str                   # pan | ms | ms_upsampled | fused
    label: str
    path: str
    width: int
    height: int


@dataclass(frozen=True)
class HistogramRecord:
    """Embedded histogram: 256 counts for one method/band/scope."""

    method: str
    band: str
    scope: str
    bins: tuple[int, ...]


@dataclass
class MetricReport:
    """Full result set of one evaluation run."""

    version: str = TOOL_VERSION
    created_utc: str = ""
    inputs: list[InputRecord] = field(default_factory=list)
    thresholds: list[int] = field(default_factory=list)
    hist_threshold: int = 20
    regions: list[dict] = field(default_factory=list)
    entries: list[MetricEntry] = field(default_factory=list)
    histograms: list[HistogramRecord] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def methods(self) -> list[str]:
        seen: dict[str, None] = {}
        for e in self.entries:
            seen.setdefault(e.method, None)
        return list(seen)

    def select(self, metric: str | None = None, method: str | None = None,
               band: str | None = None, scope: str | None = None) -> list[MetricEntry]:
        out = []
        for e in self.entries:
            if metric is not None and e.metric != metric:
                continue
            if method is not None and e.method != method:
                continue
            if band is not None and e.band != band:
                continue
            if scope is not None and e.scope != scope:
                continue
            out.append(e)
        return out

    def to_json_dict(self) -> dict:
        return {
            "version": self.version,
            "created_utc": self.created_utc,
            "inputs": [asdict(i) for i in self.inputs],
            "thresholds": list(self.thresholds),
            "hist_threshold": self.hist_threshold,
            "regions": list(self.regions),
            "entries": [asdict(e) for e in self.entries],
            "histograms": [
                {"method": h.method, "band": h.band, "scope": h.scope, "bins": list(h.bins)}
                for h in self.histograms
            ],
            "notes": list(self.notes),
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "MetricReport":
        return cls(
            version=doc["version"],
            created_utc=doc["created_utc"],
            inputs=[InputRecord(**i) for i in doc["inputs"]],
            thresholds=list(doc["thresholds"]),
            hist_threshold=doc["hist_threshold"],
            regions=list(doc["regions"]),
            entries=[MetricEntry(**e) for e in doc["entries"]],
            histograms=[
                HistogramRecord(h["method"], h["band"], h["scope"], tuple(h["bins"]))
                for h in doc["histograms"]
            ],
            notes=list(doc["notes"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for e in self.entries:
            writer.writerow([
                e.method,
                e.metric,
                e.band,
                e.scope,
                "" if e.threshold is None else e.threshold,
                format_value(e),
                "" if e.n is None else e.n,
                e.reference or "",
            ])
        return buf.getvalue()


def format_value(entry: MetricEntry) -> str:
    """CSV cell for an entry: 6 significant digits, or the marker text."""
    if entry.value is None:
        return entry.note or "undefined"
    return f"{entry.value:.6g}"
