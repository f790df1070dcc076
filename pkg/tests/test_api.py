from fastapi.testclient import TestClient

from concyclic.app import app

client = TestClient(app)


def test_health():
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json() == {"status": "ok"}


def test_circle_endpoint():
    r = client.post("/circle", json={"form": [1, 0, 1], "n_points": 2})
    assert r.status_code == 200
    cert = r.json()
    assert cert["prime"] == {"p": 73, "x1": 3, "y1": 4, "n": 4, "a": 1}
    assert cert["j"] == 3
    assert cert["points"] == [[0, -2], [0, 2]]
    assert cert["verified"] is True


def test_circle_endpoint_gram_input():
    r = client.post(
        "/circle",
        json={"gram": {"dim": 2, "entries": [[1, 0], [0, 3]]}, "n_points": 3},
    )
    assert r.status_code == 200
    assert r.json()["prime"]["p"] == 193


def test_circle_endpoint_validation():
    r = client.post("/circle", json={"n_points": 2})
    assert r.status_code == 422
    r = client.post("/circle", json={"form": [1, 0, 1], "n_points": 0})
    assert r.status_code == 422
    r = client.post("/circle", json={"form": [1, 0], "n_points": 2})
    assert r.status_code == 422


def test_circle_endpoint_invalid_form():
    # positive discriminant -> domain error from the core, mapped to 400
    r = client.post("/circle", json={"form": [1, 5, 1], "n_points": 2})
    assert r.status_code == 400
    assert r.json()["detail"]["kind"] == "invalid-input"


def test_sphere_endpoint():
    r = client.post(
        "/sphere",
        json={"gram": {"dim": 3, "entries": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}, "n_points": 2},
    )
    assert r.status_code == 200
    cert = r.json()
    assert cert["center"] == ["3/4", "0/1", "1/16"]
    assert cert["count"] == 2
    assert cert["lift_trace"][0]["mode"] == "enumerated"


def test_count_reps_endpoint():
    r = client.post("/count-reps", json={"n": 3, "p": 7, "k": 4})
    assert r.status_code == 200
    assert r.json() == {"count": 10}


def test_prime_search_endpoint():
    r = client.post("/prime-search", json={"n": 12, "a": 2})
    assert r.status_code == 200
    assert r.json() == {"n": 12, "a": 2, "p": 769, "x1": 1, "y1": 8}


def test_prime_search_budget_exceeded():
    r = client.post("/prime-search", json={"n": 3, "a": 1, "prime_bound": 50})
    assert r.status_code == 422
    assert r.json()["detail"]["kind"] == "budget-exceeded"


def test_split_endpoint():
    r = client.post("/split", json={"dk": -7, "p": 2})
    assert r.status_code == 200
    assert r.json() == {"type": "split"}
    r = client.post("/split", json={"dk": -3, "p": 2})
    assert r.json() == {"type": "inert"}
    r = client.post("/split", json={"dk": -20, "p": 2})
    assert r.json() == {"type": "ramified"}


def test_split_endpoint_invalid():
    r = client.post("/split", json={"dk": -12, "p": 5})
    assert r.status_code == 400


def test_check_main1_endpoint():
    r = client.post("/check-main1", json={"n": 3, "p": 7, "kmax": 5})
    assert r.status_code == 200
    body = r.json()
    assert body["pass"] is True
    assert body["counts"] == [2, 4, 6, 8, 10, 12]

    r = client.post("/check-main1", json={"n": 3, "p": 5, "kmax": 3})
    assert r.status_code == 200
    body = r.json()
    assert body["hypotheses_met"] is False
    assert body["pass"] is False


def test_identical_requests_identical_bytes():
    r1 = client.post("/circle", json={"form": [3, 2, 5], "n_points": 4})
    r2 = client.post("/circle", json={"form": [3, 2, 5], "n_points": 4})
    assert r1.content == r2.content
