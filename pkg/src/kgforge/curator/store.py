"""Flag-queue state, human decisions, and the append-only audit log.

flags.jsonl (written by the score stage and rewritten per entry after
re-scoring) holds the current flag records; audit.jsonl holds every state
change as an event with a strictly increasing sequence number. Folding the
decision events over the flag records yields the live queue, and replaying
the full log over an initial workspace snapshot reproduces the final
flag/vocabulary state exactly.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING

from ..clock import SystemClock, isoformat
from ..ontology.concepts import LangString, Scheme, VocabularyTerm
from ..ontology.vocabulary import VocabularyError
from ..soundness import (
    Flag,
    FlagStatus,
    flag_from_dict,
    flag_to_dict,
    read_flag_queue,
)

if TYPE_CHECKING:
    from ..pipeline import Workspace


class ConflictError(RuntimeError):
    """The flag was decided concurrently; first commit wins."""


class DecisionError(ValueError):
    pass


@dataclass
class Decision:
    flag_id: str
    action: str  # accept | correct | reject
    curator: str
    corrected_tuple: dict | None = None  # {property, value, source}
    vocabulary_addition: dict | None = None  # {scheme, pref_label, alt_labels?, note?}
    note: str | None = None

    def validate(self) -> None:
        if self.action not in ("accept", "correct", "reject"):
            raise DecisionError(f"unknown action {self.action!r}")
        if (self.corrected_tuple is not None) != (self.action == "correct"):
            raise DecisionError("corrected_tuple present iff action is 'correct'")
        if self.vocabulary_addition is not None and self.action == "reject":
            raise DecisionError("vocabulary_addition only allowed with accept or correct")
        if not self.curator:
            raise DecisionError("curator is required")


class AuditLog:
    """Append-only JSONL event store with strictly increasing sequence."""

    def __init__(self, path: str | Path, clock=None) -> None:
        self.path = Path(path)
        self.clock = clock or SystemClock()
        self._lock = threading.Lock()

    def events(self, since: int = 0) -> list[dict]:
        if not self.path.exists():
            return []
        out = []
        for line in self.path.read_text(encoding="utf-8").splitlines():
            if line.strip():
                event = json.loads(line)
                if event["seq"] > since:
                    out.append(event)
        return out

    def append(self, kind: str, payload: dict) -> dict:
        with self._lock:
            events = self.events()
            seq = events[-1]["seq"] + 1 if events else 1
            event = {
                "seq": seq,
                "kind": kind,
                "payload": payload,
                "timestamp": isoformat(self.clock.now()),
            }
            with self.path.open("a", encoding="utf-8") as f:
                f.write(json.dumps(event, ensure_ascii=False, sort_keys=True) + "\n")
            return event


def _term_from_addition(addition: dict, base: str) -> VocabularyTerm:
    alts = [
        (a["text"], a.get("language", "en")) if isinstance(a, dict) else (str(a), "en")
        for a in addition.get("alt_labels", [])
    ]
    return VocabularyTerm.create(
        Scheme(addition["scheme"]),
        addition["pref_label"],
        language=addition.get("language", "en"),
        alt_labels=alts,
        base=base,
        note=addition.get("note"),
    )


def apply_vocabulary_addition(workspace, term: VocabularyTerm) -> None:
    """Additions never silently overwrite: a different term already holding
    the concept id (same canonical label) is a duplicate and is rejected."""
    vocab = workspace.vocab()
    existing = vocab.get(term.id)
    if existing is not None and existing.content_hash() != term.content_hash():
        raise VocabularyError(
            f"duplicate pref_label {term.pref_label.text!r}: "
            f"{term.id.iri} already exists with different content"
        )
    vocab.upsert_term(term)
    vocab.save(workspace.config.path("vocabulary"))
    workspace.invalidate("vocab", "provider")


class FlagStore:
    """Live view of the flag queue plus the decision workflow."""

    def __init__(self, workspace: "Workspace") -> None:
        self.workspace = workspace
        self.audit = AuditLog(workspace.config.path("audit_path"), clock=workspace.clock())
        self._lock = threading.Lock()

    # ---------------------------------------------------------------- view

    def _folded(self) -> dict[str, Flag]:
        flags = {f.id: f for f in read_flag_queue(self.workspace.config.path("flags_path"))}
        for event in self.audit.events():
            if event["kind"] == "decision":
                payload = event["payload"]
                flag = flags.get(payload["flag_id"])
                if flag is not None and flag.status is FlagStatus.OPEN:
                    flag.status = FlagStatus(payload["resulting_status"])
                    flag.resolution = payload.get("resolution")
        return flags

    def all_flags(self) -> list[Flag]:
        return sorted(self._folded().values(), key=lambda f: (f.created_at, f.id))

    def get(self, flag_id: str) -> Flag | None:
        return self._folded().get(flag_id)

    def counts(self) -> dict:
        open_by_reason: dict[str, int] = {}
        resolved_by_reason: dict[str, int] = {}
        for flag in self.all_flags():
            bucket = open_by_reason if flag.status is FlagStatus.OPEN else resolved_by_reason
            bucket[flag.reason.value] = bucket.get(flag.reason.value, 0) + 1
        return {
            "open": dict(sorted(open_by_reason.items())),
            "resolved": dict(sorted(resolved_by_reason.items())),
            "open_total": sum(open_by_reason.values()),
            "resolved_total": sum(resolved_by_reason.values()),
        }

    def vocabulary_revision(self) -> int:
        return sum(1 for e in self.audit.events() if e["kind"] == "vocab_update")

    # ------------------------------------------------------------ decisions

    def _overlay_for(self, flag: Flag, decision: Decision) -> dict | None:
        from ..ontology.concepts import normalize_surface

        if decision.action == "reject":
            rejected = []
            for t in flag.tuples:
                rejected.append({
                    "action": "reject",
                    "property": t.property,
                    "value_norm": normalize_surface(
                        t.value if isinstance(t.value, str) else t.value_text()
                    ),
                    "channel": t.source.value,
                })
            return {"action": "reject", "items": rejected}
        if decision.action == "correct":
            corrected = decision.corrected_tuple
            target = None
            for t in flag.tuples:
                if t.property == corrected["property"] and (
                    corrected.get("source") in (None, t.source.value)
                ):
                    target = t
                    break
            if target is None:
                raise DecisionError(
                    f"corrected_tuple does not match any tuple of flag {flag.id}"
                )
            return {
                "action": "correct",
                "property": target.property,
                "value_norm": normalize_surface(
                    target.value if isinstance(target.value, str) else target.value_text()
                ),
                # an explicit source pins the correction to one channel;
                # otherwise the rewrite applies to both
                "channel": corrected.get("source"),
                "new_value": corrected["value"],
            }
        return None

    def _rescore_entries(self, entry_ids: list[str]) -> list[dict]:
        """Re-run scoring for the affected entries, rewrite their slice of
        flags.jsonl and the score artifacts, and append rescore events."""
        from ..soundness import write_flag_queue
        from ..extract import write_tuples_xml

        workspace = self.workspace
        vocab = workspace.vocab(reload=True)
        overlays = workspace.load_decision_overlays()
        summaries = []
        current = {f.id: f for f in read_flag_queue(workspace.config.path("flags_path"))}
        decided_ids = {
            e["payload"]["flag_id"] for e in self.audit.events() if e["kind"] == "decision"
        }
        scores_dir = workspace.config.path("scores_dir")
        resolved_dir = workspace.config.path("resolved_dir")
        for entry_id in sorted(set(entry_ids)):
            if not (resolved_dir / f"{entry_id}.card.xml").exists():
                continue
            result, flags, candidates = workspace.score_entry(entry_id, vocab, overlays)
            # decided flags stay in the record even when re-scoring no
            # longer produces them; open ones are replaced wholesale
            current = {
                fid: f for fid, f in current.items()
                if f.entry_id != entry_id or fid in decided_ids
            }
            for f in flags:
                if f.id not in decided_ids:
                    current[f.id] = f
            write_tuples_xml(candidates, resolved_dir / f"{entry_id}.candidates.xml")
            if scores_dir.exists():
                score_path = scores_dir / f"{entry_id}.json"
                score_path.write_text(
                    json.dumps({
                        "entry_id": entry_id,
                        "total": result.total,
                        "positive": len(result.positives()),
                        "negative": len(result.negatives()),
                        "flags": [f.id for f in flags],
                        "prompt_profile": workspace.prompt_profile().name,
                        "config_hash": workspace.config.config_hash(),
                    }, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8",
                )
            summary = {
                "entry_id": entry_id,
                "total": result.total,
                "flags": [flag_to_dict(f) for f in flags],
            }
            summaries.append(summary)
            self.audit.append("rescore", summary)
        ordered = sorted(current.values(), key=lambda f: (f.reason.value, f.id))
        write_flag_queue(ordered, workspace.config.path("flags_path"))
        return summaries

    def _entries_mentioning(self, labels: list[str]) -> list[str]:
        """Inverted index over resolved surfaces: entries whose tuples
        mention any of the labels (bounded re-scoring scope)."""
        from ..ontology.concepts import normalize_surface
        from ..extract import read_tuples_xml

        wanted = {normalize_surface(l) for l in labels}
        hits = []
        resolved_dir = self.workspace.config.path("resolved_dir")
        for path in sorted(resolved_dir.glob("*.card.xml")):
            entry_id = path.name[: -len(".card.xml")]
            found = False
            for suffix in (".card.xml", ".llm.xml"):
                ts = read_tuples_xml(resolved_dir / f"{entry_id}{suffix}")
                for t in ts.tuples:
                    value = t.value if isinstance(t.value, str) else t.value_text()
                    if normalize_surface(value) in wanted:
                        found = True
                        break
                if found:
                    break
            if found:
                hits.append(entry_id)
        return hits

    def submit_decision(self, decision: Decision) -> tuple[Flag, dict]:
        """Apply one decision atomically: vocabulary addition, overlay,
        audit events, re-scoring of affected entries. Concurrent decisions
        on the same flag: first commit wins."""
        decision.validate()
        with self._lock:
            flag = self.get(decision.flag_id)
            if flag is None:
                raise KeyError(decision.flag_id)
            if flag.status is not FlagStatus.OPEN:
                raise ConflictError(f"flag {flag.id} is already {flag.status.value}")

            side_effects: dict = {}
            workspace = self.workspace

            vocab_labels: list[str] = []
            if decision.vocabulary_addition is not None:
                term = _term_from_addition(decision.vocabulary_addition, workspace.base)
                # VocabularyError here aborts the whole decision, nothing persisted
                apply_vocabulary_addition(workspace, term)
                self.audit.append("vocab_update", {
                    "term": term.id.iri,
                    "scheme": term.scheme.value,
                    "pref_label": term.pref_label.text,
                    "alt_labels": [
                        {"text": a.text, "language": a.language} for a in term.alt_labels
                    ],
                    "content_hash": term.content_hash(),
                })
                vocab_labels = [l.text for l in term.all_labels()]
                side_effects["vocabulary_revision"] = self.vocabulary_revision()
                side_effects["vocabulary_term"] = term.id.iri

            overlay = self._overlay_for(flag, decision)
            resulting_status = {
                "accept": FlagStatus.ACCEPTED,
                "correct": FlagStatus.CORRECTED,
                "reject": FlagStatus.REJECTED,
            }[decision.action]
            resolution = {
                "action": decision.action,
                "curator": decision.curator,
                "note": decision.note,
                "corrected_tuple": decision.corrected_tuple,
                "vocabulary_addition": decision.vocabulary_addition,
            }
            self.audit.append("decision", {
                "flag_id": flag.id,
                "entry_id": flag.entry_id,
                "action": decision.action,
                "curator": decision.curator,
                "note": decision.note,
                "resulting_status": resulting_status.value,
                "resolution": resolution,
                "overlay": overlay,
            })

            affected = [flag.entry_id]
            if vocab_labels:
                affected.extend(self._entries_mentioning(vocab_labels))
            side_effects["rescored"] = self._rescore_entries(affected)

            updated = self.get(flag.id)
            if updated is None:
                # re-scoring no longer produces this flag; report the decided one
                flag.status = resulting_status
                flag.resolution = resolution
                updated = flag
            return updated, side_effects


def replay_audit(initial_flags: list[Flag], events: list[dict]) -> dict[str, Flag]:
    """Pure replay of the audit log over an initial flag queue snapshot:
    rescore events replace an entry's flag records, decision events fold
    statuses. Returns the final flag state keyed by id."""
    flags: dict[str, Flag] = {f.id: flag_from_dict(flag_to_dict(f)) for f in initial_flags}
    for event in sorted(events, key=lambda e: e["seq"]):
        if event["kind"] == "rescore":
            entry_id = event["payload"]["entry_id"]
            flags = {
                fid: f for fid, f in flags.items()
                if f.entry_id != entry_id or f.status is not FlagStatus.OPEN
            }
            for record in event["payload"]["flags"]:
                flag = flag_from_dict(record)
                if flag.id not in flags:
                    flags[flag.id] = flag
        elif event["kind"] == "decision":
            payload = event["payload"]
            flag = flags.get(payload["flag_id"])
            if flag is not None and flag.status is FlagStatus.OPEN:
                flag.status = FlagStatus(payload["resulting_status"])
                flag.resolution = payload.get("resolution")
    return flags
