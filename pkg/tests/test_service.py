import math

import pytest
from fastapi.testclient import TestClient

from rspbench.service import app

INV_SQRT2 = 1.0 / math.sqrt(2.0)

BB84_MODEL = {
    "dim": 2,
    "states": [
        [[1.0, 0.0], [0.0, 0.0]],
        [[0.0, 0.0], [1.0, 0.0]],
        [[INV_SQRT2, 0.0], [INV_SQRT2, 0.0]],
        [[INV_SQRT2, 0.0], [-INV_SQRT2, 0.0]],
    ],
}


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as c:
        yield c


class TestHealth:
    def test_health(self, client):
        r = client.get("/health")
        assert r.status_code == 200
        assert r.json()["status"] == "ok"


class TestThresholdEndpoint:
    def test_bb84_both(self, client):
        r = client.post("/threshold", json={"ensemble": BB84_MODEL, "cbits": 1})
        assert r.status_code == 200
        doc = r.json()
        assert doc["exact"] == pytest.approx((1 + INV_SQRT2) / 2, abs=1e-9)
        assert doc["upper_bound"] == pytest.approx((1 + INV_SQRT2) / 2, abs=1e-9)
        assert doc["exact_partition"] == [[0, 2], [1, 3]]

    def test_upper_only(self, client):
        r = client.post("/threshold", json={"ensemble": BB84_MODEL, "cbits": 1,
                                            "method": "upper"})
        assert r.status_code == 200
        doc = r.json()
        assert doc["exact"] is None
        assert doc["upper_bound"] == pytest.approx((1 + INV_SQRT2) / 2, abs=1e-9)

    def test_guard_kind(self, client):
        big = {"dim": 2, "states": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]] * 8}
        r = client.post("/threshold", json={"ensemble": big, "cbits": 1})
        assert r.status_code == 400
        assert r.json()["detail"]["kind"] == "guard"

    def test_non_uniform_is_validation(self, client):
        model = dict(BB84_MODEL, probabilities=[0.4, 0.2, 0.2, 0.2])
        r = client.post("/threshold", json={"ensemble": model, "cbits": 1})
        assert r.status_code == 400
        assert r.json()["detail"]["kind"] == "validation"


class TestFidelityEndpoint:
    def test_benchmark_only(self, client):
        r = client.post("/fidelity", json={})
        assert r.status_code == 200
        assert r.json()["benchmark"] == pytest.approx(0.7482029, abs=1e-7)

    def test_full_computation(self, client):
        r = client.post("/fidelity", json={"q": 0.338214, "se": 0.008188})
        doc = r.json()
        assert doc["fidelity"] == pytest.approx(0.808969964, abs=1e-6)
        assert doc["df_delta"] == pytest.approx(0.005087, abs=1e-5)
        assert doc["z_paper"] > 0 and doc["z_delta"] > 0


class TestMetaEndpoint:
    def test_pipeline(self, client):
        records = [{"label": "a", "trials": 100, "hits": 30},
                   {"label": "b", "trials": 400, "hits": 30}]
        r = client.post("/meta", json={"records": records})
        assert r.status_code == 200
        doc = r.json()
        assert doc["pooled_rate"] == pytest.approx(0.15, abs=1e-9)
        assert doc["total_trials"] == 500

    def test_empty_records_rejected(self, client):
        r = client.post("/meta", json={"records": []})
        assert r.status_code == 400
        assert r.json()["detail"]["kind"] == "validation"

    def test_bad_record_shape_422(self, client):
        r = client.post("/meta", json={"records": [{"label": "a", "trials": -1, "hits": 0}]})
        assert r.status_code == 422


class TestSimulateEndpoints:
    def test_classical_deterministic(self, client):
        req = {"ensemble": BB84_MODEL, "cbits": 1, "trials": 20000, "seed": 11}
        a = client.post("/simulate/classical", json=req).json()
        b = client.post("/simulate/classical", json=req).json()
        assert a == b
        assert a["threshold"] == pytest.approx((1 + INV_SQRT2) / 2, abs=1e-9)
        assert abs(a["mean_fidelity"] - a["threshold"]) < 1e-6

    def test_rspmi_table(self, client):
        req = {"hit_prob": 0.25, "n_experiments": 5, "trials_per": 38, "seed": 21}
        doc = client.post("/simulate/rspmi", json=req).json()
        assert len(doc["records"]) == 5
        assert all(0 <= r["hits"] <= r["trials"] == 38 for r in doc["records"])

    def test_rspmi_trial_list(self, client):
        req = {"hit_prob": 0.5, "n_experiments": 3, "trials_per": [5, 6, 7], "seed": 1}
        doc = client.post("/simulate/rspmi", json=req).json()
        assert [r["trials"] for r in doc["records"]] == [5, 6, 7]
