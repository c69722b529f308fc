import json

import pytest
from fastapi.testclient import TestClient

from scimap.export import validate
from scimap.index import build_index
from scimap.service import (
    NetworkRequest,
    PerimeterRegistry,
    build_app,
    derive_seed,
    handle_get_network,
)
from helpers import carbon_corpus, make_pub


@pytest.fixture(scope="module")
def carbon_index():
    return build_index(carbon_corpus())


def test_empty_index_empty_network():
    ix = build_index([])
    body = handle_get_network(ix, NetworkRequest(q=""))
    assert body["network"]["items"] == []
    assert body["diagnostics"]["matched_docs"] == 0


def test_pipeline_strongest_link(carbon_index):
    body = handle_get_network(
        carbon_index, NetworkRequest(q="carbon sequestration", seed=1), current_year=2025
    )
    strengths = [link["strength"] for link in body["network"]["links"]]
    assert max(strengths) == 17
    assert validate({"network": body["network"]}) == []
    assert body["diagnostics"]["matched_docs"] == 89


def test_pipeline_deterministic(carbon_index):
    req = NetworkRequest(q="carbon sequestration", seed=7, labeling="fallback")
    b1 = handle_get_network(carbon_index, req, current_year=2025)
    b2 = handle_get_network(carbon_index, req, current_year=2025)
    assert b1["network"] == b2["network"]


def test_derived_seed_stable():
    r1 = NetworkRequest(q="carbon", model="topic")
    r2 = NetworkRequest(q="carbon", model="topic")
    assert derive_seed(r1) == derive_seed(r2)
    assert derive_seed(NetworkRequest(q="other")) != derive_seed(r1)


def test_unknown_perimeter_raises(carbon_index):
    with pytest.raises(KeyError):
        handle_get_network(
            carbon_index,
            NetworkRequest(q="", perimeter_id="nope"),
            registry=PerimeterRegistry(),
        )


def test_perimeter_restricts_and_monotone(carbon_index):
    registry = PerimeterRegistry()
    registry.register("lab-x", {"c001", "c002", "c003"})
    req = NetworkRequest(q="", perimeter_id="lab-x", seed=1)
    body = handle_get_network(carbon_index, req, registry=registry)
    assert body["diagnostics"]["matched_docs"] == 3
    full = handle_get_network(carbon_index, NetworkRequest(q="", seed=1))
    full_strengths = {
        (l["source_id"], l["target_id"]): l["strength"] for l in full["network"]["links"]
    }
    for link in body["network"]["links"]:
        assert link["strength"] <= full_strengths[(link["source_id"], link["target_id"])]


def test_registry_persistence(tmp_path):
    path = tmp_path / "perimeters.json"
    reg = PerimeterRegistry.open(path)
    reg.register("lab-x", {"p1", "p2"})
    reg.register("lab-x", {"p3"})  # re-registration replaces
    reloaded = PerimeterRegistry.open(path)
    assert reloaded.get("lab-x") == {"p3"}
    assert reloaded.get("other") is None


def test_registry_rejects_empty_id():
    with pytest.raises(ValueError):
        PerimeterRegistry().register("", {"p1"})


# --- HTTP surface ---------------------------------------------------------


@pytest.fixture(scope="module")
def client(carbon_index):
    return TestClient(build_app(carbon_index))


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


def test_get_networks(client):
    resp = client.get("/networks", params={"q": "carbon sequestration", "seed": 3})
    assert resp.status_code == 200
    body = resp.json()
    assert validate({"network": body["network"]}) == []
    assert body["diagnostics"]["clusters"] >= 1


def test_get_networks_byte_identical(client):
    params = {"q": "carbon sequestration", "seed": 3, "labeling": "fallback"}
    r1 = client.get("/networks", params=params)
    r2 = client.get("/networks", params=params)
    assert r1.content == r2.content


def test_unknown_perimeter_404(client):
    resp = client.get("/networks", params={"q": "", "perimeter": "ghost"})
    assert resp.status_code == 404


def test_register_and_query_perimeter(client):
    resp = client.post(
        "/perimeters", json={"perimeter_id": "lab-y", "pub_ids": ["c001", "c002"]}
    )
    assert resp.status_code == 200
    resp = client.get("/networks", params={"q": "", "perimeter": "lab-y"})
    assert resp.status_code == 200
    assert resp.json()["diagnostics"]["matched_docs"] == 2


def test_perimeter_ids_outside_corpus_ignored(client):
    client.post("/perimeters", json={"perimeter_id": "lab-z", "pub_ids": ["c001", "zz"]})
    resp = client.get("/networks", params={"q": "", "perimeter": "lab-z"})
    assert resp.json()["diagnostics"]["matched_docs"] == 1


def test_cors_headers(client):
    resp = client.get("/health", headers={"Origin": "http://example.org"})
    assert resp.headers.get("access-control-allow-origin") == "*"
