"""HTTP surface: endpoint flows and error-code mapping."""

import pytest
from fastapi.testclient import TestClient

from missing_why.httpapi import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


@pytest.fixture()
def session_id(client, corpus_text):
    response = client.post("/sessions", json={"ontology": corpus_text})
    assert response.status_code == 200
    body = response.json()
    assert body["epoch"] == 0
    client.put(
        f"/sessions/{body['id']}/query",
        json={"missing": ["SubClassOf(:SpicyAnalogue :SpicyTarget)"]},
    )
    return body["id"]


def test_unknown_session_is_404(client):
    response = client.get("/sessions/doesnotexist/support", params={"method": "small_model"})
    assert response.status_code == 404
    assert response.json()["error"]["code"] == "session_not_found"


def test_syntax_error_is_400_with_code(client):
    response = client.post("/sessions", json={"ontology": "SubClassOf(:A\n"})
    assert response.status_code == 400
    assert response.json()["error"]["code"] == "syntax_error"


def test_support_endpoint(client, session_id):
    response = client.get(f"/sessions/{session_id}/support", params={"method": "small_model"})
    assert response.json() == {"supported": True, "message": ""}
    response = client.get(
        f"/sessions/{session_id}/support", params={"method": "relevant_alpha"}
    )
    assert response.json()["supported"] is False


def test_explain_recompute_apply_revert_flow(client, session_id, corpus_text):
    response = client.post(
        f"/sessions/{session_id}/explain",
        json={"method": "small_model", "max_classes": 2},
    )
    assert response.status_code == 200
    graph = response.json()["graph"]
    assert len(graph["nodes"]) == 2
    assert graph["nodes"][0]["marked"] is True

    response = client.post(
        f"/sessions/{session_id}/disjointnesses", json={"names": ["CheeseT", "VegT"]}
    )
    assert response.json()["pending"] == ["DisjointClasses(:CheeseT :VegT)"]

    response = client.post(f"/sessions/{session_id}/recompute", json={"method": "small_model"})
    assert len(response.json()["graph"]["nodes"]) == 3

    response = client.post(f"/sessions/{session_id}/apply", json={"what": "disjointnesses"})
    assert response.json()["epoch"] == 1
    assert response.json()["ontology"].endswith("DisjointClasses(:CheeseT :VegT)\n")

    response = client.post(f"/sessions/{session_id}/revert")
    body = response.json()
    assert "DisjointClasses(:CheeseT :VegT)" not in body["ontology"]

    # the graph endpoint now has nothing to export
    response = client.get(f"/sessions/{session_id}/graph")
    assert response.status_code == 400
    assert response.json()["error"]["code"] == "no_result"


def test_graph_reexport_with_k(client, session_id):
    client.post(f"/sessions/{session_id}/explain", json={"method": "small_model"})
    full = client.get(f"/sessions/{session_id}/graph", params={"k": 5}).json()
    narrow = client.get(f"/sessions/{session_id}/graph", params={"k": 1}).json()
    assert len(narrow["nodes"][1]["labels"]) == 1
    assert narrow["nodes"][1]["labels"] == full["nodes"][1]["labels"][:1]
    dot = client.get(f"/sessions/{session_id}/graph", params={"format": "dot"}).json()
    assert dot["dot"].startswith("digraph")


def test_remove_disjointness_by_index(client, session_id):
    client.post(f"/sessions/{session_id}/disjointnesses", json={"names": ["CheeseT", "VegT"]})
    response = client.delete(f"/sessions/{session_id}/disjointnesses/0")
    assert response.json()["pending"] == []
    response = client.delete(f"/sessions/{session_id}/disjointnesses/0")
    assert response.status_code == 404
    assert response.json()["error"]["code"] == "index_out_of_range"


def test_entailed_query_maps_to_409(client, session_id):
    client.put(
        f"/sessions/{session_id}/query",
        json={"missing": ["SubClassOf(:SpicyAnalogue :Pizza)"]},
    )
    response = client.post(f"/sessions/{session_id}/explain", json={"method": "small_model"})
    assert response.status_code == 409
    assert response.json()["error"]["code"] == "already_entailed"


def test_abduction_and_hypothesis_apply_over_http(client, session_id):
    client.put(
        f"/sessions/{session_id}/query",
        json={
            "missing": ["SubClassOf(:SpicyAnalogue :SpicyTarget)"],
            "signature": {"concepts": ["PepperT", "SpicyT"], "roles": [], "individuals": []},
        },
    )
    response = client.post(
        f"/sessions/{session_id}/explain", json={"method": "naive_abduction"}
    )
    body = response.json()
    assert body["hypotheses"] == [
        {"axioms": ["SubClassOf(:PepperT :SpicyT)"], "verified": True, "depth": 0}
    ]
    assert body["exhausted"] is True
    response = client.post(
        f"/sessions/{session_id}/apply", json={"what": "hypothesis", "index": 0}
    )
    assert "SubClassOf(:PepperT :SpicyT)" in response.json()["ontology"]


def test_unravel_over_http(client, session_id):
    client.put(
        f"/sessions/{session_id}/query",
        json={
            "missing": ["SubClassOf(:SpicyAnalogue :SpicyTarget)"],
            "fixpoints": "SubClassOf(:PepperT :SpicyT)\n---\nSubClassOf(:TomatoT :SpicyT)\n",
        },
    )
    response = client.post(f"/sessions/{session_id}/explain", json={"method": "unravel"})
    assert response.status_code == 200
    assert len(response.json()["hypotheses"]) == 2


def test_inconsistent_disjointness_maps_to_409(client, session_id):
    client.post(f"/sessions/{session_id}/disjointnesses", json={"names": ["Pizza", "Food"]})
    response = client.post(f"/sessions/{session_id}/recompute", json={"method": "small_model"})
    assert response.status_code == 409
    assert response.json()["error"]["code"] == "inconsistent_with_disjointness"


def test_cancel_endpoint_idle_session(client, session_id):
    response = client.post(f"/sessions/{session_id}/cancel")
    assert response.json() == {"cancelled": False}
