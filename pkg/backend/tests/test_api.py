import pytest
from fastapi.testclient import TestClient

from main import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    response = client.get("/api/v1/health")
    assert response.status_code == 200
    assert response.json() == {"status": "healthy", "components": {"catalog": True}}


class TestCoeffs:
    def test_terms(self, client):
        response = client.post("/api/v1/coeffs", json={"expr": "1/2*q + n", "order": 2, "params": {"n": 3}})
        assert response.status_code == 200
        body = response.json()
        assert body["order"] == 2
        assert body["terms"] == [
            {"exponent": 0, "coefficient": "3"},
            {"exponent": 1, "coefficient": "1/2"},
            {"exponent": 2, "coefficient": "0"},
        ]

    def test_syntax_error_is_bad_request(self, client):
        response = client.post("/api/v1/coeffs", json={"expr": "q^", "order": 5})
        assert response.status_code == 400
        assert response.json()["detail"].startswith("ExprSyntaxError")

    def test_order_bounds(self, client):
        assert client.post("/api/v1/coeffs", json={"expr": "q", "order": -1}).status_code == 422


def test_string_function(client):
    response = client.post("/api/v1/string", json={"p": 1, "pprime": 3, "m": 0, "ell": 0, "order": 4})
    assert response.status_code == 200
    assert [t["coefficient"] for t in response.json()["terms"]] == ["1", "1", "2", "3", "5"]
    bad = client.post("/api/v1/string", json={"p": 2, "pprime": 4, "m": 0, "ell": 0})
    assert bad.status_code == 400


def test_catalog_listing(client):
    response = client.get("/api/v1/catalog", params={"pattern": "theta.flip"})
    assert response.status_code == 200
    (info,) = response.json()
    assert info["name"] == "theta.flip"
    assert info["source"] == "theta_properties"
    assert info["params"] == "a in -3..7 e in 0..1"
    assert info["instances"] == 22


class TestVerify:
    def test_single_assignment(self, client):
        response = client.post("/api/v1/verify", json={"name": "theta.flip", "params": {"a": 2, "e": 1}, "order": 15})
        assert response.status_code == 200
        body = response.json()
        assert body["ok"]
        assert [r["params"] for r in body["reports"]] == ["a=2,e=1"]

    def test_every_assignment(self, client):
        response = client.post("/api/v1/verify", json={"name": "theta.rearrange.jbar0", "order": 15})
        assert response.status_code == 200
        assert len(response.json()["reports"]) == 3

    def test_out_of_range(self, client):
        response = client.post("/api/v1/verify", json={"name": "theta.flip", "params": {"a": 99, "e": 0}})
        assert response.status_code == 400

    def test_wrong_parameter_names(self, client):
        response = client.post("/api/v1/verify", json={"name": "theta.flip", "params": {"b": 1}})
        assert response.status_code == 400

    def test_unknown_identity(self, client):
        assert client.post("/api/v1/verify", json={"name": "no.such.identity"}).status_code == 400
