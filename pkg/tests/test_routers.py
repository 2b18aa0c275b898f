import pytest
from fastapi.testclient import TestClient

from main import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_root(client):
    assert client.get("/").json() == {"message": "twistalg service is running!"}


def test_catalog(client):
    response = client.get("/catalog")
    assert response.status_code == 200
    assert len(response.json()["types"]) == 8
    shown = client.post("/catalog/show", json={"type": "NC", "params": {"alpha": "3"}}).json()
    assert shown["params"] == {"alpha": "3"}


def test_curve_j(client):
    response = client.post("/curve/j", json={"lambda": "0"})
    assert response.status_code == 200
    assert response.json()["j"] == "0"


def test_classify(client):
    response = client.post("/classify", json={"type": "CC", "seed": 3})
    assert response.status_code == 200
    body = response.json()
    assert body["branch"] == "G(E) meets N(E,σ) trivially"
    assert body["verified"] is True


def test_twist(client):
    response = client.post("/twist", json={"type": "S", "params": {"alpha": "2"}, "phi": "diag(1,2,3)",
                                           "check_geometric": True})
    assert response.status_code == 200
    assert response.json()["geometric_check"] is True


def test_domain_errors_are_unprocessable(client):
    response = client.post("/curve/j", json={"lambda": "1"})
    assert response.status_code == 422
    assert response.json()["detail"]["error"] == "singular_curve"


def test_unknown_routes(client):
    assert client.post("/curve/frobnicate", json={"lambda": "0"}).status_code == 404
    assert client.post("/verify", json={"suite": "table9"}).status_code == 404
