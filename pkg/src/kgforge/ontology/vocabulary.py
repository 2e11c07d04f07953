"""Controlled-vocabulary store: SKOS-profile loading, indexed lookup, atomic
upserts with an audit trail.

The vocabulary file is Turtle or RDF/XML (auto-detected by extension) using
skos:prefLabel / skos:altLabel / skos:broader / skos:inScheme /
skos:notation / skos:note. Unit terms may carry two domain predicates,
``<base>/def/unitKind`` and ``<base>/def/gramsEquivalent``, which feed the
unit table.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from decimal import Decimal
from enum import Enum
from pathlib import Path

from ..kgstore import rdfxml, turtle
from ..kgstore.triples import Literal, SKOS, RDF_TYPE, Triple
from .concepts import (
    ConceptId,
    DEFAULT_BASE_IRI,
    LangString,
    Scheme,
    UnitKind,
    VocabularyTerm,
    normalize_surface,
)
from .models import UnitDefinition, UnitTable


class VocabularyError(ValueError):
    """Raised when a vocabulary file or mutation violates the invariants."""


class MatchKind(str, Enum):
    EXACT_PREF = "exact_pref"
    EXACT_ALT = "exact_alt"
    NORMALIZED = "normalized"


_KIND_ORDER = {MatchKind.EXACT_PREF: 0, MatchKind.EXACT_ALT: 1, MatchKind.NORMALIZED: 2}


@dataclass
class AuditEntry:
    revision: int
    term: str
    content_hash: str
    changed: bool


@dataclass
class VocabularyStore:
    """Terms indexed for lookup. Writes are serialized through a single
    lock and commit atomically: either all invariants hold afterwards or
    the store is unchanged."""

    base: str = DEFAULT_BASE_IRI
    terms: dict[ConceptId, VocabularyTerm] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self._lock = threading.Lock()
        self._revision = 0
        self.audit: list[AuditEntry] = []
        self._reindex(self.terms)

    # ------------------------------------------------------------ lookup

    def _reindex(self, terms: dict[ConceptId, VocabularyTerm]) -> None:
        exact_pref: dict[tuple, list[ConceptId]] = {}
        exact_alt: dict[tuple, list[ConceptId]] = {}
        normalized: dict[tuple, list[ConceptId]] = {}
        for term in terms.values():
            scheme = term.scheme
            key = (scheme, term.pref_label.text.casefold())
            exact_pref.setdefault(key, []).append(term.id)
            for alt in term.alt_labels:
                exact_alt.setdefault((scheme, alt.text.casefold()), []).append(term.id)
            for label in term.all_labels():
                norm = normalize_surface(label.text)
                if norm:
                    normalized.setdefault((scheme, norm), []).append(term.id)
        self._exact_pref = exact_pref
        self._exact_alt = exact_alt
        self._normalized = normalized
        self.terms = terms

    @property
    def revision(self) -> int:
        return self._revision

    def get(self, concept: ConceptId) -> VocabularyTerm | None:
        return self.terms.get(concept)

    def __len__(self) -> int:
        return len(self.terms)

    def counts_by_scheme(self) -> dict[Scheme, int]:
        counts: dict[Scheme, int] = {}
        for term in self.terms.values():
            counts[term.scheme] = counts.get(term.scheme, 0) + 1
        return counts

    def lookup_term(
        self,
        surface: str,
        scheme: Scheme | None = None,
        language: str | None = None,
    ) -> list[tuple[ConceptId, MatchKind]]:
        """Case- and diacritic-insensitive label lookup. Unknown surfaces
        yield an empty list. Results are ordered exact_pref > exact_alt >
        normalized, then shorter pref label, then lexicographic IRI."""
        schemes = [scheme] if scheme else list(Scheme)
        folded = surface.casefold()
        norm = normalize_surface(surface)
        best: dict[ConceptId, MatchKind] = {}

        def consider(concept: ConceptId, kind: MatchKind) -> None:
            current = best.get(concept)
            if current is None or _KIND_ORDER[kind] < _KIND_ORDER[current]:
                best[concept] = kind

        for s in schemes:
            for concept in self._exact_pref.get((s, folded), []):
                consider(concept, MatchKind.EXACT_PREF)
            for concept in self._exact_alt.get((s, folded), []):
                consider(concept, MatchKind.EXACT_ALT)
            if norm:
                for concept in self._normalized.get((s, norm), []):
                    consider(concept, MatchKind.NORMALIZED)

        if language is not None:
            filtered: dict[ConceptId, MatchKind] = {}
            for concept, kind in best.items():
                labels = self.terms[concept].all_labels()
                if any(l.language == language and l.text.casefold() == folded for l in labels):
                    filtered[concept] = kind
                elif kind is MatchKind.NORMALIZED:
                    filtered[concept] = kind
            best = filtered

        def sort_key(item: tuple[ConceptId, MatchKind]):
            concept, kind = item
            term = self.terms[concept]
            return (_KIND_ORDER[kind], len(term.pref_label.text), concept.iri)

        return sorted(best.items(), key=sort_key)

    def canonical_name(self, concept: ConceptId) -> str:
        term = self.terms.get(concept)
        return term.pref_label.text if term else concept.slug

    # ----------------------------------------------------------- mutation

    def upsert_term(self, term: VocabularyTerm) -> int:
        """Insert or update one term atomically. Returns the new revision id.
        Violations (duplicate label, cycle) reject the whole change."""
        with self._lock:
            candidate = dict(self.terms)
            existing = candidate.get(term.id)
            candidate[term.id] = term
            problems = verify_invariants(candidate)
            if problems:
                raise VocabularyError("; ".join(problems))
            changed = existing is None or existing.content_hash() != term.content_hash()
            self._reindex(candidate)
            self._revision += 1
            self.audit.append(
                AuditEntry(self._revision, term.id.iri, term.content_hash(), changed)
            )
            return self._revision

    # -------------------------------------------------------- derived data

    def unit_table(self) -> UnitTable:
        table = UnitTable()
        for term in self.terms.values():
            if term.scheme is not Scheme.UNIT:
                continue
            table.add(
                UnitDefinition(term.id, term.unit_kind or UnitKind.COUNT, term.grams_equivalent)
            )
        return table

    def multiword_terms(self) -> list[tuple[ConceptId, str]]:
        """(concept, normalized label) for every multi-word label; feeds the
        multi-word-suspect check."""
        out = []
        for term in self.terms.values():
            for label in term.all_labels():
                norm = normalize_surface(label.text)
                if " " in norm:
                    out.append((term.id, norm))
        return sorted(set(out), key=lambda x: (x[1], x[0].iri))

    # -------------------------------------------------------- persistence

    def to_triples(self) -> list[Triple]:
        base = self.base.rstrip("/")
        kind_pred = f"{base}/def/unitKind"
        grams_pred = f"{base}/def/gramsEquivalent"
        triples: list[Triple] = []
        for term in sorted(self.terms.values(), key=lambda t: t.id.iri):
            s = term.id.iri
            triples.append(Triple(s, RDF_TYPE, SKOS + "Concept"))
            triples.append(Triple(s, SKOS + "inScheme", f"{base}/scheme/{term.scheme.value}"))
            triples.append(
                Triple(s, SKOS + "prefLabel",
                       Literal(term.pref_label.text, language=term.pref_label.language))
            )
            for alt in term.alt_labels:
                triples.append(
                    Triple(s, SKOS + "altLabel", Literal(alt.text, language=alt.language))
                )
            if term.notation:
                triples.append(Triple(s, SKOS + "notation", Literal(term.notation)))
            if term.note:
                triples.append(Triple(s, SKOS + "note", Literal(term.note)))
            if term.broader:
                triples.append(Triple(s, SKOS + "broader", term.broader.iri))
            if term.unit_kind is not None:
                triples.append(Triple(s, kind_pred, Literal(term.unit_kind.value)))
            if term.grams_equivalent is not None:
                triples.append(Triple(s, grams_pred, Literal.decimal(term.grams_equivalent)))
        return triples

    def save(self, path: str | Path) -> None:
        path = Path(path)
        prefixes = {"kgf": self.base.rstrip("/") + "/"}
        if path.suffix in (".rdf", ".xml", ".owl"):
            text = rdfxml.dumps(self.to_triples(), extra_prefixes=prefixes)
        else:
            text = turtle.dumps(self.to_triples(), extra_prefixes=prefixes)
        path.write_text(text, encoding="utf-8")


def verify_invariants(terms: dict[ConceptId, VocabularyTerm]) -> list[str]:
    """All violated invariants, one message each; empty list when clean."""
    problems: list[str] = []

    seen: dict[tuple, ConceptId] = {}
    for term in sorted(terms.values(), key=lambda t: t.id.iri):
        key = (term.scheme, term.pref_label.language, term.pref_label.text.casefold())
        other = seen.get(key)
        if other is not None:
            problems.append(
                f"duplicate pref_label {term.pref_label.text!r} in scheme "
                f"{term.scheme.value} ({other.iri} vs {term.id.iri})"
            )
        else:
            seen[key] = term.id

    for term in sorted(terms.values(), key=lambda t: t.id.iri):
        if term.broader is not None:
            parent = terms.get(term.broader)
            if parent is None:
                problems.append(f"{term.id.iri}: broader target {term.broader.iri} missing")
            elif parent.scheme is not term.scheme:
                problems.append(
                    f"{term.id.iri}: broader crosses schemes "
                    f"({term.scheme.value} -> {parent.scheme.value})"
                )
        for child in term.narrower:
            child_term = terms.get(child)
            if child_term is not None and child_term.broader != term.id:
                problems.append(
                    f"{term.id.iri}: narrower link to {child.iri} not reciprocated"
                )

    # cycle detection over broader links, per scheme
    state: dict[ConceptId, int] = {}
    for start in sorted(terms, key=lambda c: c.iri):
        if state.get(start):
            continue
        path: list[ConceptId] = []
        node: ConceptId | None = start
        while node is not None and node in terms:
            if state.get(node) == 2:
                break
            if node in path:
                cycle = path[path.index(node):] + [node]
                problems.append(
                    "hierarchy cycle: " + " -> ".join(c.slug for c in cycle)
                )
                break
            path.append(node)
            node = terms[node].broader
        for visited in path:
            state[visited] = 2
    return problems


_SCHEME_BY_NAME = {s.value: s for s in Scheme}


def load_vocabulary(path: str | Path, base: str = DEFAULT_BASE_IRI) -> VocabularyStore:
    """Load and verify a SKOS-profile vocabulary file. Any invariant
    violation aborts with a diagnostic listing every offending term."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(str(path))
    text = path.read_text(encoding="utf-8")
    if path.suffix in (".rdf", ".xml", ".owl"):
        triples = rdfxml.loads(text)
    else:
        triples = turtle.loads(text)
    return store_from_triples(triples, base=base)


def store_from_triples(triples: list[Triple], base: str = DEFAULT_BASE_IRI) -> VocabularyStore:
    base = base.rstrip("/")
    kind_pred = f"{base}/def/unitKind"
    grams_pred = f"{base}/def/gramsEquivalent"

    by_subject: dict[str, list[Triple]] = {}
    for t in triples:
        by_subject.setdefault(t.subject, []).append(t)

    terms: dict[ConceptId, VocabularyTerm] = {}
    problems: list[str] = []
    for subject in sorted(by_subject):
        rows = by_subject[subject]
        schemes = [
            t.object for t in rows
            if t.predicate == SKOS + "inScheme" and isinstance(t.object, str)
        ]
        if not schemes:
            continue  # scheme declarations and other non-concept subjects
        if len(set(schemes)) > 1:
            problems.append(f"{subject}: belongs to multiple schemes")
            continue
        scheme_name = schemes[0].rsplit("/", 1)[-1]
        scheme = _SCHEME_BY_NAME.get(scheme_name)
        if scheme is None:
            problems.append(f"{subject}: unknown scheme {scheme_name!r}")
            continue

        pref: LangString | None = None
        alts: list[LangString] = []
        notation = note = None
        broader = None
        unit_kind = None
        grams = None
        for t in rows:
            obj = t.object
            if t.predicate == SKOS + "prefLabel" and isinstance(obj, Literal):
                if pref is not None:
                    problems.append(f"{subject}: multiple prefLabels")
                pref = LangString(obj.value, obj.language or "en")
            elif t.predicate == SKOS + "altLabel" and isinstance(obj, Literal):
                alts.append(LangString(obj.value, obj.language or "en"))
            elif t.predicate == SKOS + "notation" and isinstance(obj, Literal):
                notation = obj.value
            elif t.predicate == SKOS + "note" and isinstance(obj, Literal):
                note = obj.value
            elif t.predicate == SKOS + "broader" and isinstance(obj, str):
                broader = ConceptId(obj)
            elif t.predicate == kind_pred and isinstance(obj, Literal):
                unit_kind = UnitKind(obj.value)
            elif t.predicate == grams_pred and isinstance(obj, Literal):
                grams = Decimal(obj.value)
        if pref is None:
            problems.append(f"{subject}: missing skos:prefLabel")
            continue
        term = VocabularyTerm(
            id=ConceptId(subject),
            pref_label=pref,
            scheme=scheme,
            alt_labels=sorted(alts),
            notation=notation,
            broader=broader,
            note=note,
            unit_kind=unit_kind,
            grams_equivalent=grams,
        )
        terms[term.id] = term

    # derive narrower from broader so the links stay mutually consistent
    for term in terms.values():
        if term.broader and term.broader in terms:
            parent = terms[term.broader]
            if term.id not in parent.narrower:
                parent.narrower.append(term.id)
    for term in terms.values():
        term.narrower.sort()

    problems.extend(verify_invariants(terms))
    if problems:
        raise VocabularyError(
            f"vocabulary verification failed ({len(problems)} problem(s)):\n  "
            + "\n  ".join(problems)
        )
    return VocabularyStore(base=base, terms=terms)
