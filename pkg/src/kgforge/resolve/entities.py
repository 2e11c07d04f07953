"""Surface-to-concept resolution with near-miss reporting.

Unresolved is a value, not an error: it carries the best near-miss
candidates (cross-scheme hits like "kadahi" living in the cookware scheme,
multi-word vocabulary terms the surface is a fragment of, fuzzy label
matches) so downstream flagging and the curation UI can offer fixes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..ontology.concepts import ConceptId, Scheme, normalize_surface
from ..ontology.vocabulary import VocabularyStore
from .cluster import EntityCluster
from .minhash import exact_jaccard


@dataclass(frozen=True)
class NearMiss:
    concept: ConceptId
    scheme: Scheme
    label: str
    kind: str  # cross_scheme | multiword | fuzzy


@dataclass
class Unresolved:
    surface: str
    reason: str
    near_misses: list[NearMiss] = field(default_factory=list)

    def cross_scheme_hits(self) -> list[NearMiss]:
        return [n for n in self.near_misses if n.kind == "cross_scheme"]

    def multiword_candidates(self) -> list[NearMiss]:
        return [n for n in self.near_misses if n.kind == "multiword"]


def resolve_entity(
    surface: str,
    expected_scheme: Scheme,
    vocab: VocabularyStore,
    clusters: list[EntityCluster] | None = None,
    translate: Callable[[str], str | None] | None = None,
) -> ConceptId | Unresolved:
    """Resolve a surface form within ``expected_scheme``. Falls back to the
    cluster representative when the surface belongs to a cluster, and to the
    translation provider for vernacular names the alias table misses."""
    tried = [surface]
    hits = vocab.lookup_term(surface, scheme=expected_scheme)
    if hits:
        return hits[0][0]

    if clusters:
        for cluster in clusters:
            if surface in {m[0] for m in cluster.members} and cluster.representative != surface:
                tried.append(cluster.representative)
                hits = vocab.lookup_term(cluster.representative, scheme=expected_scheme)
                if hits:
                    return hits[0][0]
                break

    if translate is not None:
        translated = translate(surface)
        if translated and translated.casefold() != surface.casefold():
            tried.append(translated)
            hits = vocab.lookup_term(translated, scheme=expected_scheme)
            if hits:
                return hits[0][0]

    near_misses: list[NearMiss] = []
    for candidate in tried:
        for concept, _kind in vocab.lookup_term(candidate):
            term = vocab.get(concept)
            if term is not None and term.scheme is not expected_scheme:
                near_misses.append(NearMiss(
                    concept, term.scheme, term.pref_label.text, "cross_scheme"
                ))

    norm = normalize_surface(surface)
    if norm:
        for concept, label in vocab.multiword_terms():
            if norm != label and (label.startswith(norm + " ") or label.endswith(" " + norm)):
                term = vocab.get(concept)
                near_misses.append(NearMiss(
                    concept, term.scheme, term.pref_label.text, "multiword"
                ))

        fuzzy: list[tuple[float, NearMiss]] = []
        for concept, term in vocab.terms.items():
            if term.scheme is not expected_scheme:
                continue
            best = max(
                (exact_jaccard(norm, label.text) for label in term.all_labels()
                 if normalize_surface(label.text)),
                default=0.0,
            )
            if best >= 0.4:
                fuzzy.append((best, NearMiss(
                    concept, term.scheme, term.pref_label.text, "fuzzy"
                )))
        fuzzy.sort(key=lambda x: (-x[0], x[1].concept.iri))
        near_misses.extend(n for _, n in fuzzy[:3])

    seen = set()
    unique = []
    for n in near_misses:
        key = (n.concept, n.kind)
        if key not in seen:
            seen.add(key)
            unique.append(n)
    reason = "unknown surface" if not unique else "not in expected scheme"
    return Unresolved(surface=surface, reason=reason, near_misses=unique)
