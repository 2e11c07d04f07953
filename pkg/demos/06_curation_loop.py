#!/usr/bin/env python3
"""The human-in-the-loop round trip: score, decide every flag through the
HTTP API, re-score with the enriched vocabulary, watch the open count fall,
then ingest through the (now satisfied) gate.

Run from the repo root: python demos/06_curation_loop.py
"""

import tempfile
from pathlib import Path

import yaml
from fastapi.testclient import TestClient

from kgforge.curator.service import create_app
from kgforge.pipeline import Workspace, WorkspaceConfig

ROOT = Path(__file__).resolve().parent.parent

with tempfile.TemporaryDirectory() as tmp:
    ws_dir = Path(tmp) / "ws"
    ws_dir.mkdir()
    (ws_dir / "kgforge.yaml").write_text(yaml.safe_dump({
        "fixture_map": str(ROOT / "fixtures" / "urls.json"),
        "seed_list": None,
        "clock": "2024-07-15T00:00:00Z",
    }))
    ws = Workspace(WorkspaceConfig.load(ws_dir))
    ws.init_workspace()
    for stage in ("crawl", "extract", "resolve", "score"):
        ws.run_stage(stage)

    client = TestClient(create_app(ws))
    stats = client.get("/api/stats").json()
    print(f"round 1: {stats['flags']['open_total']} open flags")

    def pick(reason, needle=""):
        items = client.get("/api/flags", params={"reason": reason, "status": "open"}).json()["items"]
        return next(f for f in items if needle in f["detail"])

    decisions = [
        (pick("MISCLASSIFIED_SCHEME", "kadahi"),
         {"action": "reject", "curator": "demo", "note": "cookware, not food"}),
        (pick("MISCLASSIFIED_SCHEME", "pudina chutney"),
         {"action": "accept", "curator": "demo",
          "vocabulary_addition": {"scheme": "ingredient", "pref_label": "pudina chutney"}}),
        (pick("MULTIWORD_SUSPECT"),
         {"action": "correct", "curator": "demo",
          "corrected_tuple": {"property": "has_ingredient", "value": "pudina chutney",
                              "source": "LLM"}}),
        (pick("MISMATCH"),
         {"action": "correct", "curator": "demo",
          "corrected_tuple": {"property": "cuisine", "value": "North Indian",
                              "source": "LLM"}}),
        (pick("RESTRICTION_VIOLATION"),
         {"action": "correct", "curator": "demo",
          "corrected_tuple": {"property": "diet_label", "value": "Vegetarian"}}),
        (pick("UNKNOWN_TERM"),
         {"action": "accept", "curator": "demo",
          "vocabulary_addition": {"scheme": "ingredient", "pref_label": "kokum"}}),
    ]
    for flag, body in decisions:
        result = client.post(f"/api/flags/{flag['id']}/decision", json=body).json()
        effects = result["side_effects"]
        extra = f", vocabulary rev {effects['vocabulary_revision']}" if "vocabulary_revision" in effects else ""
        print(f"  {flag['reason']:22s} -> {result['flag']['status']}{extra}")

    print("\nround 2 (re-score with the enriched vocabulary and corrections):")
    ws.run_score()
    stats = client.get("/api/stats").json()
    print(f"  open flags: {stats['flags']['open_total']} "
          f"(resolved so far: {stats['flags']['resolved_total']})")

    report = ws.run_ingest()  # gate passes: nothing open
    print(f"\ningested {report.counts['recipes']} recipes, "
          f"{report.counts['triples']} triples; audit trail:")
    for event in client.get("/api/audit").json()["events"][:6]:
        print(f"  #{event['seq']:<3} {event['kind']}")
    print("  ...")
