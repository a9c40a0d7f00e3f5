import pytest
from fastapi.testclient import TestClient

from rectbeta.service import app

client = TestClient(app)


def test_health():
    assert client.get("/health").json() == {"status": "ok"}


def test_k2m_defaults_to_unit_second_cumulant():
    r = client.post("/k2m", json={"q": "1", "gamma": "1", "order": 2})
    assert r.status_code == 200
    assert r.json() == {"values": ["2", "12"]}


def test_charpoly():
    r = client.post("/charpoly", json={"ra": ["1"], "rb": ["1"], "m": 1, "n": 1})
    assert r.json()["polynomial"] == "z^1 - 2"


def test_jack_accepts_integers_and_strings():
    r = client.post("/jack", json={"lam": [1, 1], "theta": 2, "nvars": 3})
    assert r.json()["terms"] == [{"partition": [1, 1], "coefficient": "1"}]


def test_laguerre_and_duality():
    assert client.post("/laguerre", json={"q": "1", "gamma": "1", "order": 1}).json() == {"values": ["2"]}
    rep = client.post("/duality", json={"r": ["1", "1/2"], "m": 2, "n": 3, "order": 2}).json()
    assert rep["ratios"] == ["2", "8"]


def test_mc_verify_endpoint():
    body = {"M": 1, "N": 2, "theta_case": "one", "spectra_a": [1.0], "spectra_b": [0.5], "samples": 1000, "seed": 3}
    reps = client.post("/mc-verify", json=body).json()["reports"]
    assert [r["statistic"] for r in reps] == [[1], [2]]
    assert reps[0]["exact"] == "5/4"


@pytest.mark.parametrize(
    "path,body",
    [
        ("/k2m", {"q": 0.5, "gamma": "1", "order": 2}),
        ("/k2m", {"q": "1", "gamma": "1", "order": 0}),
        ("/charpoly", {"ra": ["1", "1"], "rb": ["1", "1"], "m": 2, "n": 1}),
        ("/convolve", {"ma": ["1"], "mb": ["1"], "q": "1", "gamma": "1", "order": 1, "extra": 1}),
    ],
)
def test_validation_errors_are_422(path, body):
    assert client.post(path, json=body).status_code == 422


def test_degenerate_parameter_is_409():
    r = client.post("/m2k", json={"m": ["1"], "q": "1", "gamma": "0", "order": 1})
    assert r.status_code == 409
    assert "vanishes" in r.json()["detail"]
