"""HTTP curation service: queue, decisions, vocabulary, audit, auth."""

from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from kgforge.curator.service import create_app

from test_pipeline import make_workspace


@pytest.fixture()
def workspace(tmp_path):
    ws = make_workspace(tmp_path / "ws")
    ws.run_crawl()
    ws.run_extract()
    ws.run_resolve()
    ws.run_score()
    return ws


@pytest.fixture()
def client(workspace):
    return TestClient(create_app(workspace))


def open_flags(client):
    return client.get("/api/flags", params={"status": "open", "page_size": 50}).json()


class TestQueue:
    def test_fresh_run_lists_all_flags_open(self, client, workspace):
        body = open_flags(client)
        assert body["total"] == 6
        from kgforge.soundness import read_flag_queue

        queue = read_flag_queue(workspace.config.path("flags_path"))
        assert body["total"] == len(queue)

    def test_rejected_filter_is_empty_on_fresh_run(self, client):
        body = client.get("/api/flags", params={"status": "rejected"}).json()
        assert body["total"] == 0 and body["items"] == []

    def test_pagination_is_stable(self, client):
        first = client.get("/api/flags", params={"page": 1, "page_size": 4}).json()
        second = client.get("/api/flags", params={"page": 2, "page_size": 4}).json()
        assert len(first["items"]) == 4
        assert len(second["items"]) == 2
        again = client.get("/api/flags", params={"page": 1, "page_size": 4}).json()
        assert [f["id"] for f in first["items"]] == [f["id"] for f in again["items"]]

    def test_invalid_filter_reports_allowed_values(self, client):
        response = client.get("/api/flags", params={"status": "bogus"})
        assert response.status_code == 400
        body = response.json()
        assert body["code"] == "bad_filter"
        assert "open" in body["details"]["allowed"]

    def test_reason_filter(self, client):
        body = client.get("/api/flags", params={"reason": "MISMATCH"}).json()
        assert body["total"] == 1


class TestFlagDetail:
    def test_multiword_detail_shows_candidate(self, client):
        flags = client.get("/api/flags", params={"reason": "MULTIWORD_SUSPECT"}).json()
        detail = client.get(f"/api/flags/{flags['items'][0]['id']}").json()
        assert any(c["label"] == "pudina chutney" for c in detail["candidates"])
        assert detail["recipe_context"]["recipe_name"] == "Pudina Chutney Sandwich"
        assert detail["recipe_context"]["card"]  # both channels present
        assert detail["recipe_context"]["llm"]

    def test_misclassified_detail_shows_cookware_hit(self, client):
        flags = client.get("/api/flags", params={"reason": "MISCLASSIFIED_SCHEME"}).json()
        kadahi = [f for f in flags["items"] if "kadahi" in f["detail"]][0]
        detail = client.get(f"/api/flags/{kadahi['id']}").json()
        assert any(c["scheme"] == "cookware" for c in detail["candidates"])

    def test_unknown_flag_is_404(self, client):
        response = client.get("/api/flags/fdeadbeef")
        assert response.status_code == 404
        assert response.json()["code"] == "not_found"

    def test_detail_reflects_decision(self, client):
        flag = client.get("/api/flags", params={"reason": "MISMATCH"}).json()["items"][0]
        client.post(f"/api/flags/{flag['id']}/decision", json={
            "action": "correct", "curator": "asha",
            "corrected_tuple": {"property": "cuisine", "value": "North Indian",
                                "source": "LLM"},
        })
        detail = client.get(f"/api/flags/{flag['id']}").json()
        assert detail["status"] == "corrected"
        assert detail["resolution"]["curator"] == "asha"


class TestDecisions:
    def test_correction_with_vocabulary_addition(self, client):
        flags = client.get("/api/flags", params={"reason": "UNKNOWN_TERM"}).json()
        flag_id = flags["items"][0]["id"]
        response = client.post(f"/api/flags/{flag_id}/decision", json={
            "action": "accept", "curator": "asha",
            "vocabulary_addition": {"scheme": "ingredient", "pref_label": "kokum"},
        })
        assert response.status_code == 200
        body = response.json()
        assert body["flag"]["status"] == "accepted"
        assert body["side_effects"]["vocabulary_revision"] == 1
        # the entry re-scored with one fewer negative
        rescored = body["side_effects"]["rescored"]
        assert any(r["flags"] == [] for r in rescored)
        assert open_flags(client)["total"] == 5

    def test_reject_excludes_tuple_from_candidates(self, client, workspace):
        from kgforge.extract import read_tuples_xml

        flags = client.get("/api/flags", params={"reason": "MISCLASSIFIED_SCHEME"}).json()
        kadahi = [f for f in flags["items"] if "kadahi" in f["detail"]][0]
        entry_id = kadahi["entry_id"]
        response = client.post(f"/api/flags/{kadahi['id']}/decision", json={
            "action": "reject", "curator": "asha",
        })
        assert response.status_code == 200
        candidates = read_tuples_xml(
            workspace.config.path("resolved_dir") / f"{entry_id}.candidates.xml"
        )
        assert "kadahi" not in [t.value for t in candidates.tuples]
        audit = client.get("/api/audit").json()["events"]
        assert [e["kind"] for e in audit] == ["decision", "rescore"]

    def test_second_decision_conflicts(self, client):
        flag = open_flags(client)["items"][0]
        first = client.post(f"/api/flags/{flag['id']}/decision",
                            json={"action": "reject", "curator": "a"})
        assert first.status_code == 200
        second = client.post(f"/api/flags/{flag['id']}/decision",
                             json={"action": "reject", "curator": "b"})
        assert second.status_code == 409
        assert second.json()["code"] == "conflict"

    def test_correct_requires_corrected_tuple(self, client):
        flag = open_flags(client)["items"][0]
        response = client.post(f"/api/flags/{flag['id']}/decision",
                               json={"action": "correct", "curator": "a"})
        assert response.status_code == 422

    def test_invalid_vocabulary_addition_rolls_back(self, client, workspace):
        flag = open_flags(client)["items"][0]
        revision_before = client.get("/api/stats").json()["vocabulary_revision"]
        response = client.post(f"/api/flags/{flag['id']}/decision", json={
            "action": "accept", "curator": "a",
            "vocabulary_addition": {"scheme": "ingredient", "pref_label": "turmeric"},
        })
        assert response.status_code == 422  # duplicate pref label
        assert client.get("/api/stats").json()["vocabulary_revision"] == revision_before
        detail = client.get(f"/api/flags/{flag['id']}").json()
        assert detail["status"] == "open"  # whole decision rolled back


class TestVocabularyEndpoints:
    def test_add_and_search_term(self, client):
        response = client.post("/api/vocabulary/terms", json={
            "scheme": "ingredient", "pref_label": "kokum",
            "alt_labels": [{"text": "aamsul", "language": "mr"}],
        })
        assert response.status_code == 200
        assert response.json()["revision"] == 1
        found = client.get("/api/vocabulary/terms", params={"query": "aamsul"}).json()
        assert found["items"][0]["pref_label"] == "kokum"

    def test_duplicate_term_rejected(self, client):
        response = client.post("/api/vocabulary/terms", json={
            "scheme": "ingredient", "pref_label": "turmeric",
        })
        assert response.status_code == 422


class TestStatsAndAudit:
    def test_fresh_stats(self, client):
        stats = client.get("/api/stats").json()
        assert stats["flags"]["open_total"] == 6
        assert stats["flags"]["resolved_total"] == 0
        assert stats["vocabulary_revision"] == 0

    def test_audit_since_filter(self, client):
        flag = open_flags(client)["items"][0]
        client.post(f"/api/flags/{flag['id']}/decision",
                    json={"action": "reject", "curator": "a"})
        events = client.get("/api/audit").json()["events"]
        assert events
        later = client.get("/api/audit", params={"since": events[0]["seq"]}).json()["events"]
        assert all(e["seq"] > events[0]["seq"] for e in later)

    def test_every_state_change_has_one_audit_event(self, client):
        flag = open_flags(client)["items"][0]
        client.post(f"/api/flags/{flag['id']}/decision",
                    json={"action": "reject", "curator": "a"})
        events = client.get("/api/audit").json()["events"]
        decisions = [e for e in events if e["kind"] == "decision"]
        assert len(decisions) == 1
        seqs = [e["seq"] for e in events]
        assert seqs == sorted(seqs) and len(set(seqs)) == len(seqs)


class TestAuth:
    def test_token_required_when_configured(self, workspace):
        client = TestClient(create_app(workspace, token="sekrit"))
        assert client.get("/api/flags").status_code == 401
        ok = client.get("/api/flags", headers={"x-api-token": "sekrit"})
        assert ok.status_code == 200


FRONTEND_DIST = Path(__file__).resolve().parent.parent / "frontend" / "dist"


@pytest.mark.skipif(not FRONTEND_DIST.exists(), reason="frontend not built")
class TestStaticUi:
    def test_built_frontend_served_at_ui(self, client):
        page = client.get("/ui/")
        assert page.status_code == 200
        assert "<title>kgforge curation</title>" in page.text
        assert client.get("/ui/main.js").status_code == 200
