"""HTTP service endpoints and their error mapping."""
import numpy as np
import pytest
from fastapi.testclient import TestClient

import apfid
from apfid import format_csv
from apfid.service.app import app
from apfid.simspec import build_simulation

from rigs import inconsistent_record, sim_spec


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


@pytest.fixture(scope="module")
def csv_text():
    return format_csv(build_simulation(sim_spec()))


RUN_CONFIG = {
    "channels": [{"input": "x1", "output": "y"}],
    "fit_tolerance": 0.05,
}


class TestHealth:
    def test_reports_version(self, client):
        resp = client.get("/health")
        assert resp.status_code == 200
        assert resp.json() == {"status": "ok", "version": apfid.__version__}


class TestIdentify:
    def test_report_round_trip(self, client, csv_text):
        resp = client.post(
            "/identify", json={"csv": csv_text, "config": RUN_CONFIG}
        )
        assert resp.status_code == 200
        assert resp.headers["content-type"].startswith("application/json")
        ch = resp.json()["channels"][0]
        assert ch["order"] == 1
        assert ch["astatism"] == 0
        assert abs(ch["coefficients"][0] + 1.0) <= 0.02
        assert abs(ch["coefficients"][1] + 2.0) <= 0.04

    def test_bytes_deterministic(self, client, csv_text):
        body = {"csv": csv_text, "config": RUN_CONFIG, "jobs": 1}
        one = client.post("/identify", json=body).content
        two = client.post("/identify", json=body).content
        assert one == two

    def test_malformed_csv_maps_to_400_with_line(self, client):
        resp = client.post(
            "/identify",
            json={"csv": "t,x,y\n0,1,1\n0.5,2,2\n1.1,3,3",
                  "config": {"channels": [{"input": "x", "output": "y"}]}},
        )
        assert resp.status_code == 400
        detail = resp.json()["detail"]
        assert detail["line"] == 3

    def test_no_consistent_model_maps_to_422(self, client):
        resp = client.post(
            "/identify",
            json={
                "csv": format_csv(inconsistent_record()),
                "config": {
                    "channels": [{"input": "x", "output": "y"}],
                    "max_order": 2,
                },
            },
        )
        assert resp.status_code == 422
        detail = resp.json()["detail"]
        assert detail["stage"] == "identify"
        assert list(detail["residuals"]) == ["1", "2"]
        assert all(r > 1e-3 for r in detail["residuals"].values())

    def test_missing_config_rejected_by_validation(self, client, csv_text):
        resp = client.post("/identify", json={"csv": csv_text})
        assert resp.status_code == 422

    def test_unknown_config_key_rejected_by_validation(self, client, csv_text):
        config = dict(RUN_CONFIG, mystery=1)
        resp = client.post("/identify", json={"csv": csv_text, "config": config})
        assert resp.status_code == 422


class TestSpectrum:
    def test_peak_location_and_dc(self, client, csv_text):
        resp = client.post("/spectrum", json={"csv": csv_text, "column": "x1"})
        assert resp.status_code == 200
        doc = resp.json()
        omegas = np.asarray(doc["omegas"])
        amps = np.asarray(doc["amplitudes"])
        assert abs(omegas[int(np.argmax(amps))] - 0.25) <= 2e-3
        assert abs(doc["dc"]) <= 1e-3

    def test_unknown_column_maps_to_400(self, client, csv_text):
        resp = client.post("/spectrum", json={"csv": csv_text, "column": "ghost"})
        assert resp.status_code == 400
        assert "ghost" in resp.json()["detail"]["message"]


class TestSimulate:
    def test_returns_parseable_csv(self, client):
        resp = client.post("/simulate", json={"spec": sim_spec()})
        assert resp.status_code == 200
        assert resp.headers["content-type"].startswith("text/csv")
        assert resp.text.splitlines()[0] == "t,x1,x2,y"

    def test_simulated_csv_identifies_through_service(self, client):
        csv_out = client.post("/simulate", json={"spec": sim_spec()}).text
        resp = client.post(
            "/identify", json={"csv": csv_out, "config": RUN_CONFIG}
        )
        assert resp.status_code == 200
        assert resp.json()["channels"][0]["order"] == 1

    def test_bad_spec_maps_to_400(self, client):
        resp = client.post(
            "/simulate", json={"spec": {"count": 64, "dt": 0.5, "inputs": []}}
        )
        assert resp.status_code == 400
        assert "inputs" in resp.json()["detail"]["message"]
