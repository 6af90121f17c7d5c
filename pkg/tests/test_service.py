import pytest

pytest.importorskip("fastapi")
pytest.importorskip("httpx")

from fastapi.testclient import TestClient  # noqa: E402

from eulerorient.service import create_app  # noqa: E402


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    assert client.get("/health").json()["status"] == "ok"


def test_coeffs(client):
    r = client.post("/coeffs", json={"method": "closedform1", "order": 2})
    assert r.status_code == 200
    assert r.json()["Q"] == ["0", "v^2 + 3*v", "2*v^3 + 15*v^2 + 18*v"]


def test_bad_specialisation(client):
    assert client.post("/coeffs", json={"method": "closedform0", "order": 2, "omega": "1"}).status_code == 422
    assert client.post("/coeffs", json={"method": "nope"}).status_code == 422


def test_verify_negative_control(client):
    ok = client.post("/verify", json={"suite": "odes", "order": 6}).json()
    bad = client.post("/verify", json={"suite": "odes", "order": 6, "perturb": True}).json()
    assert ok["ok"] and not bad["ok"]
