import pytest
from fastapi.testclient import TestClient

from finalg import docio
from finalg.service import app

from .conftest import make_bool4, make_chain


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def doc_of(A):
    return docio.algebra_to_doc(A)


@pytest.fixture
def chain3_doc():
    return doc_of(make_chain(3, ["0", "a", "1"],
                             arrow=[[2, 1, 2], [0, 2, 2], [0, 0, 2]]))


def test_validate_ok(client, chain3_doc):
    r = client.post("/validate", json={"algebra": chain3_doc})
    assert r.status_code == 200
    assert r.json()["ok"] is True


def test_validate_reports_order_violations(client):
    bad = {"size": 2, "leq": [[1, 1], [1, 1]]}
    r = client.post("/validate", json={"algebra": bad})
    assert r.status_code == 200
    body = r.json()
    assert body["ok"] is False
    assert body["violations"][0]["axiom"] == "antisymmetry"


def test_classify(client, chain3_doc):
    r = client.post("/classify", json={"algebra": chain3_doc})
    assert r.status_code == 200
    labels = r.json()["labels"]
    assert "hBDL" in labels and "SH" not in labels


def test_kalman_endpoint(client):
    r = client.post("/kalman", json={"algebra": doc_of(make_bool4()),
                                     "as": "bdl"})
    assert r.status_code == 200
    out = r.json()["algebra"]
    assert out["size"] == 9
    assert out["consts"]["center"] == 0


def test_center_endpoint(client):
    r = client.post("/kalman", json={"algebra": doc_of(make_bool4()),
                                     "as": "bdl"})
    pair_doc = r.json()["algebra"]
    r = client.post("/center", json={"algebra": pair_doc})
    assert r.status_code == 200
    assert r.json()["algebra"]["size"] == 4


def test_ck_endpoint(client):
    r = client.post("/kalman", json={"algebra": doc_of(make_chain(2)),
                                     "as": "ms"})
    r = client.post("/ck", json={"algebra": r.json()["algebra"]})
    assert r.status_code == 200
    assert r.json()["holds"] is True


def test_roundtrip_endpoint(client):
    A = make_chain(2, arrow=[[1, 1], [0, 1]])
    r = client.post("/roundtrip", json={"algebra": doc_of(A), "as": "ha"})
    assert r.status_code == 200
    body = r.json()
    assert all(body.values())


def test_roundtrip_poset_level_without_top(client):
    fan = {"size": 3, "leq": [[1, 1, 1], [0, 1, 0], [0, 0, 1]],
           "consts": {"bottom": 0}}
    r = client.post("/roundtrip", json={"algebra": fan, "as": "poset"})
    assert r.status_code == 200
    assert all(r.json().values())


def test_congruences_endpoint(client, chain3_doc):
    r = client.post("/congruences", json={"algebra": chain3_doc})
    assert r.status_code == 200
    assert len(r.json()["congruences"]) == 2


def test_wb_congruences_endpoint(client):
    r = client.post("/kalman", json={
        "algebra": doc_of(make_chain(2, arrow=[[1, 1], [0, 1]])),
        "as": "his"})
    r = client.post("/wb-congruences", json={"algebra": r.json()["algebra"]})
    assert r.status_code == 200
    assert len(r.json()["congruences"]) == 2


def test_filters_endpoint(client, chain3_doc):
    r = client.post("/filters", json={"algebra": chain3_doc})
    assert len(r.json()["filters"]) == 3
    r = client.post("/filters", json={"algebra": chain3_doc,
                                      "congruent_only": True})
    assert len(r.json()["filters"]) == 2


def test_quotient_endpoint(client):
    r = client.post("/kalman", json={
        "algebra": doc_of(make_chain(2, arrow=[[1, 1], [0, 1]])),
        "as": "his"})
    pair_doc = r.json()["algebra"]
    r = client.post("/quotient", json={"algebra": pair_doc,
                                       "theta": [[0, 1, 2]]})
    assert r.status_code == 200
    assert r.json()["algebra"]["size"] == 1


def test_quotient_rejects_bad_partition(client):
    r = client.post("/kalman", json={
        "algebra": doc_of(make_chain(2, arrow=[[1, 1], [0, 1]])),
        "as": "his"})
    pair_doc = r.json()["algebra"]
    r = client.post("/quotient", json={"algebra": pair_doc,
                                       "theta": [[0, 1]]})
    assert r.status_code == 422


def test_search_endpoint(client):
    r = client.post("/search", json={"class": "CenteredKleene",
                                     "max_size": 7, "predicate": "ck"})
    assert r.status_code == 200
    body = r.json()
    assert body["status"] == "CounterexampleFound"
    assert body["witness"]["size"] == 7
    r = client.post("/search", json={"class": "BDL", "max_size": 4,
                                     "predicate": "kalman-ck"})
    assert r.json()["status"] == "AllSatisfy"


def test_input_errors_are_422(client):
    r = client.post("/classify", json={"algebra": {
        "size": 2, "leq": [[1, 1], [0, 1]],
        "ops": {"meet": [[0, 1], [1, 1]]}}})
    assert r.status_code == 422
    r = client.post("/search", json={"class": "NelsonAlgebra",
                                     "max_size": 2})
    assert r.status_code == 422
