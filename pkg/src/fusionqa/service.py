"""HTTP service wrapping the evaluation pipeline.

Endpoints operate on server-local file paths and return the same report
structure the CLI writes to report.json. The CLI and this service share
the pipeline module; the service adds request/response validation and maps
domain errors onto HTTP status codes (404 unreadable input, 400 bad
configuration or incompatible dimensions).
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .edges import DEFAULT_THRESHOLDS
from .errors import BoundsError, ConfigError, DimensionMismatchError
from .pipeline import evaluate_images, load_inputs, write_outputs
from .report import TOOL_VERSION
from .synth import SceneParams, write_fixture_set

app = FastAPI(
    title="fusionqa",
    description="Spatial and spectral quality evaluation of pan-sharpened imagery",
    version=TOOL_VERSION,
)


class HealthResponse(BaseModel):
    status: str
    version: str


class FusedInput(BaseModel):
    label: str
    path: str


class EvaluateRequest(BaseModel):
    pan_path: str
    ms_path: str
    fused: list[FusedInput] = Field(min_length=1)
    thresholds: list[int] = Field(default_factory=lambda: list(DEFAULT_THRESHOLDS))
    hist_threshold: int = 20
    regions: dict | None = None
    out_dir: str | None = None


class EvaluateResponse(BaseModel):
    report: dict
    outputs: dict | None = None


class FixturesRequest(BaseModel):
    out_dir: str
    width: int = 600
    height: int = 525
    seed: int = 7
    detail_density: float = 0.9
    blur_radius: int = 2
    hf_gains: list[float] = Field(default_factory=lambda: [0.5, 1.0, 2.0])
    shifts: list[float] = Field(default_factory=lambda: [5.0, 15.0, 30.0])
    shift_band: str = "B"


class FixturesResponse(BaseModel):
    files: list[str]


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=TOOL_VERSION)


@app.post("/evaluate", response_model=EvaluateResponse)
def evaluate(request: EvaluateRequest) -> EvaluateResponse:
    labels = [f.label for f in request.fused]
    if len(set(labels)) != len(labels):
        raise HTTPException(status_code=400, detail="duplicate fused labels")
    reserved = {"MS", "PAN"} & set(labels)
    if reserved:
        raise HTTPException(status_code=400,
                            detail=f"fused labels {sorted(reserved)} are reserved")

    try:
        pan, ms, fused, paths = load_inputs(
            request.pan_path, request.ms_path,
            [(f.label, f.path) for f in request.fused],
        )
    except OSError as exc:
        raise HTTPException(status_code=404, detail=f"cannot read input: {exc}")
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))

    try:
        report = evaluate_images(
            pan, ms, fused,
            thresholds=request.thresholds,
            hist_threshold=request.hist_threshold,
            region_config=request.regions,
            input_paths=paths,
        )
    except (DimensionMismatchError, ConfigError, BoundsError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc))

    outputs = None
    if request.out_dir:
        try:
            outputs = write_outputs(report, request.out_dir)
        except OSError as exc:
            raise HTTPException(status_code=400, detail=f"cannot write outputs: {exc}")

    return EvaluateResponse(report=report.to_json_dict(), outputs=outputs)


@app.post("/fixtures", response_model=FixturesResponse)
def fixtures(request: FixturesRequest) -> FixturesResponse:
    try:
        params = SceneParams(
            width=request.width,
            height=request.height,
            detail_density=request.detail_density,
            seed=request.seed,
            blur_radius=request.blur_radius,
        )
        files = write_fixture_set(request.out_dir, params, request.hf_gains,
                                  request.shifts, request.shift_band)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    except OSError as exc:
        raise HTTPException(status_code=400, detail=f"cannot write fixtures: {exc}")
    return FixturesResponse(files=files)
