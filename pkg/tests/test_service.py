"""HTTP service endpoints exercised through the ASGI test client."""

import json

import pytest
from fastapi.testclient import TestClient

from fusionqa.service import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


class TestHealth:
    def test_ok(self, client):
        response = client.get("/health")
        assert response.status_code == 200
        body = response.json()
        assert body["status"] == "ok"
        assert body["version"]


class TestEvaluate:
    def test_full_run(self, client, fixture_dir):
        response = client.post("/evaluate", json={
            "pan_path": str(fixture_dir / "pan.pgm"),
            "ms_path": str(fixture_dir / "ms.ppm"),
            "fused": [
                {"label": "hf05", "path": str(fixture_dir / "fused_hf0.5.ppm")},
                {"label": "hf1", "path": str(fixture_dir / "fused_hf1.ppm")},
            ],
        })
        assert response.status_code == 200
        report = response.json()["report"]
        assert report["thresholds"] == [20, 40, 60, 80, 100]
        methods = {e["method"] for e in report["entries"]}
        assert methods == {"MS", "PAN", "hf05", "hf1"}
        assert response.json()["outputs"] is None

    def test_writes_outputs_when_requested(self, client, fixture_dir, tmp_path):
        out = tmp_path / "svc"
        response = client.post("/evaluate", json={
            "pan_path": str(fixture_dir / "pan.pgm"),
            "ms_path": str(fixture_dir / "ms.ppm"),
            "fused": [{"label": "hf1", "path": str(fixture_dir / "fused_hf1.ppm")}],
            "thresholds": [20, 60],
            "out_dir": str(out),
        })
        assert response.status_code == 200
        outputs = response.json()["outputs"]
        assert (out / "report.csv").exists()
        assert outputs["charts"]

    def test_missing_input_404(self, client, fixture_dir, tmp_path):
        response = client.post("/evaluate", json={
            "pan_path": str(tmp_path / "missing.pgm"),
            "ms_path": str(fixture_dir / "ms.ppm"),
            "fused": [{"label": "hf1", "path": str(fixture_dir / "fused_hf1.ppm")}],
        })
        assert response.status_code == 404

    def test_dimension_mismatch_400(self, client, fixture_dir, tmp_path):
        import numpy as np

        from fusionqa import netpbm
        from fusionqa.raster import Band, MultibandImage

        small = Band(np.zeros((10, 10), dtype=np.uint8))
        path = tmp_path / "small.ppm"
        netpbm.write_ppm(MultibandImage(small, small, small), path)
        response = client.post("/evaluate", json={
            "pan_path": str(fixture_dir / "pan.pgm"),
            "ms_path": str(fixture_dir / "ms.ppm"),
            "fused": [{"label": "bad", "path": str(path)}],
        })
        assert response.status_code == 400
        assert "bad" in response.json()["detail"]

    def test_duplicate_labels_400(self, client, fixture_dir):
        response = client.post("/evaluate", json={
            "pan_path": str(fixture_dir / "pan.pgm"),
            "ms_path": str(fixture_dir / "ms.ppm"),
            "fused": [
                {"label": "x", "path": str(fixture_dir / "fused_hf1.ppm")},
                {"label": "x", "path": str(fixture_dir / "fused_hf2.ppm")},
            ],
        })
        assert response.status_code == 400

    def test_empty_fused_list_rejected(self, client, fixture_dir):
        response = client.post("/evaluate", json={
            "pan_path": str(fixture_dir / "pan.pgm"),
            "ms_path": str(fixture_dir / "ms.ppm"),
            "fused": [],
        })
        assert response.status_code == 422  # pydantic validation

    def test_inline_region_config(self, client, fixture_dir):
        response = client.post("/evaluate", json={
            "pan_path": str(fixture_dir / "pan.pgm"),
            "ms_path": str(fixture_dir / "ms.ppm"),
            "fused": [{"label": "hf1", "path": str(fixture_dir / "fused_hf1.ppm")}],
            "regions": {"regions": [
                {"name": "only", "x0": 0, "y0": 0, "w": 20, "h": 20}]},
            "thresholds": [20],
        })
        assert response.status_code == 200
        report = response.json()["report"]
        scopes = {e["scope"] for e in report["entries"] if e["metric"] == "michelson"}
        assert scopes == {"only", "whole"}

    def test_bad_region_config_400(self, client, fixture_dir):
        response = client.post("/evaluate", json={
            "pan_path": str(fixture_dir / "pan.pgm"),
            "ms_path": str(fixture_dir / "ms.ppm"),
            "fused": [{"label": "hf1", "path": str(fixture_dir / "fused_hf1.ppm")}],
            "regions": {"regions": [
                {"name": "oob", "x0": 10000, "y0": 0, "w": 5, "h": 5}]},
        })
        assert response.status_code == 400


class TestFixtures:
    def test_generates_files(self, client, tmp_path):
        response = client.post("/fixtures", json={
            "out_dir": str(tmp_path / "fx"),
            "width": 100,
            "height": 100,
            "hf_gains": [1.0],
            "shifts": [15.0],
        })
        assert response.status_code == 200
        files = response.json()["files"]
        assert len(files) == 4

    def test_bad_params_400(self, client, tmp_path):
        response = client.post("/fixtures", json={
            "out_dir": str(tmp_path / "fx"),
            "width": 101,
            "height": 100,
        })
        assert response.status_code == 400


class TestOpenApi:
    def test_endpoints_documented(self, client):
        schema = client.get("/openapi.json").json()
        assert set(schema["paths"]) >= {"/health", "/evaluate", "/fixtures"}
