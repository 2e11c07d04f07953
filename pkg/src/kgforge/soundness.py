"""Match scoring of card-channel versus LLM-channel tuples, and the flag
queue for human validation.

Scoring rule: a (property, value) present in both channels with equal
canonical value scores both tuples +1; the same single-valued property with
different values scores both tuples -1 (a mismatch pair). Tuples present in
only one channel are checked against the vocabulary scheme controlling the
property: hit +1, miss -1. Properties without a controlling scheme (serving
size, timestamps, free text) pass through at +1; the vocabulary has nothing
to contradict them. Ingredient tuples pair by canonical name; when both
sides carry a quantity and the gram-normalized amounts differ, the pair
counts as a mismatch with a quantity sub-reason.

Every negative score becomes exactly one flag; positive tuples become
knowledge-graph candidates. The per-entry total is the soundness score
that tracks extraction quality across runs and rounds.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from decimal import Decimal
from enum import Enum

from .extract.tuples import Channel, Tuple, TupleSet
from .ontology.concepts import ConceptId, normalize_surface
from .ontology.models import IngredientStore, Recipe, UnitTable
from .ontology.rules import RestrictionRule, check_restrictions
from .ontology.vocabulary import VocabularyStore
from .resolve.entities import Unresolved
from .resolve.properties import PropertyMap


class ScoreBasis(str, Enum):
    CARD_LLM_MATCH = "card_llm_match"
    CARD_LLM_MISMATCH = "card_llm_mismatch"
    VOCAB_HIT = "vocab_hit"
    VOCAB_MISS = "vocab_miss"


@dataclass(frozen=True)
class ScoredTuple:
    tuple: Tuple
    score: int
    basis: ScoreBasis
    note: str | None = None
    pair_key: str | None = None  # links the two sides of a match/mismatch

    def __post_init__(self) -> None:
        positive = self.basis in (ScoreBasis.CARD_LLM_MATCH, ScoreBasis.VOCAB_HIT)
        if (self.score == 1) != positive:
            raise ValueError(f"score {self.score} inconsistent with basis {self.basis}")


class FlagReason(str, Enum):
    MISMATCH = "MISMATCH"
    UNKNOWN_TERM = "UNKNOWN_TERM"
    RESTRICTION_VIOLATION = "RESTRICTION_VIOLATION"
    MISCLASSIFIED_SCHEME = "MISCLASSIFIED_SCHEME"
    MULTIWORD_SUSPECT = "MULTIWORD_SUSPECT"


class FlagStatus(str, Enum):
    OPEN = "open"
    ACCEPTED = "accepted"
    CORRECTED = "corrected"
    REJECTED = "rejected"


@dataclass
class Flag:
    id: str
    entry_id: str
    reason: FlagReason
    tuples: list[Tuple]
    created_at: str
    status: FlagStatus = FlagStatus.OPEN
    detail: str = ""
    candidates: list[dict] = field(default_factory=list)  # near-miss suggestions
    resolution: dict | None = None

    def __post_init__(self) -> None:
        if (self.resolution is not None) != (self.status is not FlagStatus.OPEN):
            raise ValueError("resolution present iff status != open")


def _flag_id(entry_id: str, reason: str, parts: list[str]) -> str:
    digest = hashlib.sha1(
        "\x1f".join([entry_id, reason, *sorted(parts)]).encode("utf-8")
    ).hexdigest()
    return f"f{digest[:12]}"


def _canon(value) -> str:
    if isinstance(value, str):
        return normalize_surface(value)
    return normalize_surface(f"{value.magnitude} {value.unit}")


def _quantities_agree(a: Tuple, b: Tuple, units: UnitTable | None) -> bool:
    qa, qb = a.quantity, b.quantity
    if qa is None or qb is None:
        return True
    if units is not None:
        ga, gb = qa.grams(units), qb.grams(units)
        if ga is not None and gb is not None:
            return ga == gb
    return (qa.magnitude, str(qa.unit), qa.approximate) == (
        qb.magnitude, str(qb.unit), qb.approximate
    )


@dataclass
class ScoringResult:
    scored: list[ScoredTuple]
    total: int

    def positives(self) -> list[ScoredTuple]:
        return [s for s in self.scored if s.score == 1]

    def negatives(self) -> list[ScoredTuple]:
        return [s for s in self.scored if s.score == -1]


def score_tuples(
    card: TupleSet,
    llm: TupleSet,
    vocab: VocabularyStore,
    property_map: PropertyMap,
    units: UnitTable | None = None,
) -> ScoringResult:
    """Score two canonicalized tuple sets sharing one subject."""
    if card.subject != llm.subject:
        raise ValueError(f"mixed subjects: {card.subject!r} vs {llm.subject!r}")

    scored: list[ScoredTuple] = []
    properties = sorted(set(card.by_property()) | set(llm.by_property()))
    card_by_prop = card.by_property()
    llm_by_prop = llm.by_property()

    for prop in properties:
        spec = property_map.spec_for(prop)
        card_ts = list(card_by_prop.get(prop, []))
        llm_ts = list(llm_by_prop.get(prop, []))

        # phase 1: canonical-value matches (bag semantics)
        used_llm: set[int] = set()
        leftovers_card: list[Tuple] = []
        for ct in card_ts:
            match_index = None
            for i, lt in enumerate(llm_ts):
                if i not in used_llm and _canon(ct.value) == _canon(lt.value):
                    match_index = i
                    break
            if match_index is None:
                leftovers_card.append(ct)
                continue
            used_llm.add(match_index)
            lt = llm_ts[match_index]
            pair = f"{prop}:{_canon(ct.value)}"
            if not _quantities_agree(ct, lt, units):
                scored.append(ScoredTuple(ct, -1, ScoreBasis.CARD_LLM_MISMATCH,
                                          note="quantity", pair_key=pair))
                scored.append(ScoredTuple(lt, -1, ScoreBasis.CARD_LLM_MISMATCH,
                                          note="quantity", pair_key=pair))
            else:
                scored.append(ScoredTuple(ct, 1, ScoreBasis.CARD_LLM_MATCH, pair_key=pair))
                scored.append(ScoredTuple(lt, 1, ScoreBasis.CARD_LLM_MATCH, pair_key=pair))
        leftovers_llm = [lt for i, lt in enumerate(llm_ts) if i not in used_llm]

        # phase 2: single-valued property present in both channels with
        # different values -> mismatch pairs
        if not spec.multi:
            while leftovers_card and leftovers_llm:
                ct = leftovers_card.pop(0)
                lt = leftovers_llm.pop(0)
                pair = f"{prop}:{_canon(ct.value)}|{_canon(lt.value)}"
                scored.append(ScoredTuple(ct, -1, ScoreBasis.CARD_LLM_MISMATCH, pair_key=pair))
                scored.append(ScoredTuple(lt, -1, ScoreBasis.CARD_LLM_MISMATCH, pair_key=pair))

        # phase 3: single-channel leftovers -> vocabulary check
        for t in leftovers_card + leftovers_llm:
            if not spec.controlled:
                scored.append(ScoredTuple(t, 1, ScoreBasis.VOCAB_HIT, note="no controlling scheme"))
                continue
            hit = None
            if isinstance(t.value, str):
                for scheme in spec.schemes:
                    hits = vocab.lookup_term(t.value, scheme=scheme)
                    if hits:
                        hit = hits[0][0]
                        break
            if hit is not None:
                scored.append(ScoredTuple(t, 1, ScoreBasis.VOCAB_HIT, note=hit.iri))
            else:
                scored.append(ScoredTuple(t, -1, ScoreBasis.VOCAB_MISS))

    total = sum(s.score for s in scored)
    return ScoringResult(scored=scored, total=total)


def candidate_tuples(scored: list[ScoredTuple]) -> TupleSet:
    """Exactly the +1 tuples, deduplicated on (subject, property, canonical
    value) with CARD preferred as the surviving source."""
    subject = scored[0].tuple.subject if scored else ""
    best: dict[tuple, Tuple] = {}
    for s in scored:
        if s.score != 1:
            continue
        t = s.tuple
        key = (t.subject, t.property, _canon(t.value))
        current = best.get(key)
        if current is None or (current.source is Channel.LLM and t.source is Channel.CARD):
            best[key] = t
    ts = TupleSet(subject=subject)
    for key in sorted(best, key=lambda k: (k[1], k[2])):
        ts.add(best[key])
    return ts


def flag_inconsistencies(
    scored: list[ScoredTuple],
    recipe: Recipe | None,
    rules: list[RestrictionRule],
    *,
    entry_id: str,
    created_at: str,
    ingredient_db: IngredientStore | None = None,
    resolutions: dict[str, "ConceptId | Unresolved"] | None = None,
    vocab: VocabularyStore | None = None,
) -> list[Flag]:
    """One flag per negative-scored mismatch pair or vocabulary miss, plus
    one per restriction violation. ``resolutions`` maps normalized surfaces
    to their resolution outcome and powers the misclassification and
    multi-word checks."""
    resolutions = resolutions or {}
    flags: list[Flag] = []

    # mismatch pairs -> one flag carrying both tuples
    pairs: dict[str, list[ScoredTuple]] = {}
    for s in scored:
        if s.basis is ScoreBasis.CARD_LLM_MISMATCH and s.pair_key:
            pairs.setdefault(s.pair_key, []).append(s)
    for pair_key in sorted(pairs):
        members = pairs[pair_key]
        tuples = [m.tuple for m in members]
        sub = members[0].note
        detail = "card and LLM channels disagree"
        if sub == "quantity":
            detail += " on quantity"
        flags.append(Flag(
            id=_flag_id(entry_id, "MISMATCH", [pair_key]),
            entry_id=entry_id,
            reason=FlagReason.MISMATCH,
            tuples=sorted(tuples, key=Tuple.sort_key),
            created_at=created_at,
            detail=detail,
        ))

    # vocabulary misses -> classified by resolution outcome
    for s in scored:
        if s.basis is not ScoreBasis.VOCAB_MISS:
            continue
        t = s.tuple
        surface = t.value if isinstance(t.value, str) else t.value_text()
        outcome = resolutions.get(normalize_surface(surface))
        reason = FlagReason.UNKNOWN_TERM
        detail = f"{surface!r} not found in the vocabulary for {t.property}"
        candidates: list[dict] = []
        if isinstance(outcome, Unresolved):
            cross = outcome.cross_scheme_hits()
            multi = outcome.multiword_candidates()
            if cross:
                reason = FlagReason.MISCLASSIFIED_SCHEME
                detail = (
                    f"{surface!r} is known in the {cross[0].scheme.value} scheme, "
                    f"not as {t.property}"
                )
            elif multi:
                reason = FlagReason.MULTIWORD_SUSPECT
                detail = (
                    f"{surface!r} looks like a fragment of the multi-word term "
                    f"{multi[0].label!r}"
                )
            candidates = [
                {"concept": n.concept.iri, "scheme": n.scheme.value,
                 "label": n.label, "kind": n.kind}
                for n in outcome.near_misses
            ]
        flags.append(Flag(
            id=_flag_id(entry_id, reason.value, [t.property, _canon(t.value), t.source.value]),
            entry_id=entry_id,
            reason=reason,
            tuples=[t],
            created_at=created_at,
            detail=detail,
            candidates=candidates,
        ))

    # restriction violations over the assembled recipe
    if recipe is not None and rules and ingredient_db is not None:
        label_tuples = [
            s.tuple for s in scored
            if s.tuple.property == "diet_label" and s.score == 1
        ]
        for violation in check_restrictions(recipe, rules, ingredient_db):
            flags.append(Flag(
                id=_flag_id(entry_id, "RESTRICTION_VIOLATION",
                            [violation.rule_id, violation.message]),
                entry_id=entry_id,
                reason=FlagReason.RESTRICTION_VIOLATION,
                tuples=sorted({t for t in label_tuples}, key=Tuple.sort_key),
                created_at=created_at,
                detail=f"rule {violation.rule_id} ({violation.kind.value}): {violation.message}",
                candidates=[{"witness": w[0], "categories": list(w[1])}
                            for w in violation.witnesses],
            ))

    return sorted(flags, key=lambda f: (f.reason.value, f.id))


# ------------------------------------------------------------ persistence

def _tuple_to_dict(t: Tuple) -> dict:
    out = {
        "subject": t.subject,
        "property": t.property,
        "source": t.source.value,
    }
    if isinstance(t.value, str):
        out["value"] = t.value
    else:
        out["value"] = {
            "magnitude": str(t.value.magnitude),
            "unit": str(t.value.unit) if t.value.unit else None,
            "approximate": t.value.approximate,
        }
    if t.quantity is not None:
        out["quantity"] = {
            "magnitude": str(t.quantity.magnitude),
            "unit": str(t.quantity.unit) if t.quantity.unit else None,
            "approximate": t.quantity.approximate,
        }
    if t.raw_property:
        out["raw_property"] = t.raw_property
    return out


def _quantity_from_dict(data: dict):
    from .ontology.models import Quantity

    unit = data.get("unit")
    if unit and "://" in unit:
        unit = ConceptId(unit)
    return Quantity(Decimal(data["magnitude"]), unit=unit,
                    approximate=bool(data.get("approximate")))


def _tuple_from_dict(data: dict) -> Tuple:
    value = data["value"]
    if isinstance(value, dict):
        value = _quantity_from_dict(value)
    quantity = data.get("quantity")
    return Tuple(
        subject=data["subject"],
        property=data["property"],
        value=value,
        source=Channel(data["source"]),
        quantity=_quantity_from_dict(quantity) if quantity else None,
        raw_property=data.get("raw_property"),
    )


def flag_to_dict(flag: Flag) -> dict:
    return {
        "id": flag.id,
        "entry_id": flag.entry_id,
        "reason": flag.reason.value,
        "status": flag.status.value,
        "created_at": flag.created_at,
        "detail": flag.detail,
        "tuples": [_tuple_to_dict(t) for t in flag.tuples],
        "candidates": flag.candidates,
        "resolution": flag.resolution,
    }


def flag_from_dict(data: dict) -> Flag:
    return Flag(
        id=data["id"],
        entry_id=data["entry_id"],
        reason=FlagReason(data["reason"]),
        tuples=[_tuple_from_dict(t) for t in data["tuples"]],
        created_at=data["created_at"],
        status=FlagStatus(data["status"]),
        detail=data.get("detail", ""),
        candidates=data.get("candidates", []),
        resolution=data.get("resolution"),
    )


def write_flag_queue(flags: list[Flag], path) -> None:
    """Append-only line-delimited flag store (one JSON object per line)."""
    from pathlib import Path

    lines = [json.dumps(flag_to_dict(f), ensure_ascii=False, sort_keys=True) for f in flags]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def read_flag_queue(path) -> list[Flag]:
    from pathlib import Path

    path = Path(path)
    if not path.exists():
        return []
    flags = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.strip():
            flags.append(flag_from_dict(json.loads(line)))
    return flags
