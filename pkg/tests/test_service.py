import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from transitpoly.service import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app, raise_server_exceptions=False)


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


def test_vertices_endpoint(client):
    resp = client.post("/vertices", json={"t": "1/2", "system": "main"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["census"] == {"total": 46, "ideal": 12, "finite": 34, "exterior": 0}
    first = body["vertices"][0]
    assert {"point", "affine", "incidence", "kind"} <= set(first)
    assert "exact" in first["affine"][0] and "approx" in first["affine"][0]


def test_vertices_fundamental(client):
    resp = client.post("/vertices", json={"t": "-1/2", "system": "fundamental"})
    body = resp.json()
    assert body["census"]["total"] == 13
    assert body["census"]["ideal"] == 1


def test_lattice_endpoint(client):
    resp = client.post("/lattice", json={"t": "1/3", "system": "octahedron"})
    assert resp.status_code == 200
    assert resp.json()["lattice"]["f_vector"] == [8, 14, 8]


def test_angles_endpoint(client):
    resp = client.post("/angles", json={"t": "1/2"})
    body = resp.json()
    non_right = [r for r in body["ridges"] if r["right"] is False]
    assert len(non_right) == 12
    assert all(r["cosine"]["exact"].startswith("-1/5")
               for r in non_right)


def test_angles_endpoint_half_pipe(client):
    resp = client.post("/angles", json={"t": "0"})
    body = resp.json()
    with_psi = [r for r in body["ridges"] if r.get("psi_sq")]
    assert len(with_psi) == 12
    assert all(r["psi_sq"]["exact"].startswith("8/1") for r in with_psi)


def test_classify_endpoint(client):
    resp = client.post("/classify", json={"t": "-1/2"})
    kinds = resp.json()["hyperplanes"]
    assert sum(1 for v in kinds.values() if v == "spacelike") == 8
    assert sum(1 for v in kinds.values() if v == "timelike") == 14
    resp0 = client.post("/classify", json={"t": "0"})
    kinds0 = resp0.json()["hyperplanes"]
    assert sum(1 for v in kinds0.values() if v == "degenerate") == 14


def test_limits_endpoint(client):
    resp = client.post("/limits", json={"order": 1, "families": ["m0", "p3", "A"]})
    body = resp.json()
    assert set(body["families"]) == {"m0", "p3", "A"}
    assert all(f["equal"] for f in body["families"].values())


def test_holonomy_endpoint(client):
    resp = client.post("/holonomy", json={"t": "-1/2"})
    body = resp.json()
    assert len(body["pairs"]) == 12
    assert body["edge_group_order"] == 8
    assert all(p["trace"]["exact"].startswith("205/9") for p in body["pairs"])


def test_dump_endpoint(client):
    resp = client.post("/dump", json={"table": "walls-rescaled", "t": "0"})
    rows = resp.json()["rows"]
    assert len(rows) == 22
    assert rows["m0"][4]["exact"] == "0/1 + 0/1*sqrt2 + 0/1*sqrt3 + 0/1*sqrt6"


def test_plotdata_endpoint(client):
    resp = client.post("/plotdata", json={"object": "slice", "t": "1/3"})
    body = resp.json()
    assert len(body["vertices"]) == 12
    assert len(body["edges"]) == 24
    assert len(body["facets"]) == 14


def test_cell24_endpoint(client):
    resp = client.post("/cell24", json={})
    assert resp.json()["result"]["status"] == "pass"


def test_verify_endpoint_small(client):
    resp = client.post("/verify", json={"checks": ["causal_types"],
                                        "t_samples": ["1/3", "-1/3"]})
    body = resp.json()
    assert body["all_pass"] is True
    assert body["certificate"][0]["name"] == "causal_types"


def test_bad_time_parameter_is_http_400(client):
    resp = client.post("/vertices", json={"t": "bogus"})
    assert resp.status_code == 400
    assert resp.json()["error"] == "ParseError"


def test_out_of_interval_is_http_400(client):
    resp = client.post("/vertices", json={"t": "9/10"})
    assert resp.status_code == 400
    assert resp.json()["error"] == "OutOfIntervalError"
