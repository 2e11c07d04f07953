#!/usr/bin/env python3
"""Controlled vocabulary: loading, multilingual lookup, atomic upserts.

Run from the repo root: python demos/01_vocabulary.py
"""

from pathlib import Path

from kgforge.ontology import (
    ConceptId,
    LangString,
    Scheme,
    VocabularyError,
    VocabularyTerm,
    load_vocabulary,
)

SEED = Path(__file__).resolve().parent.parent / "src" / "kgforge" / "seed"

vocab = load_vocabulary(SEED / "vocabulary.ttl")
counts = vocab.counts_by_scheme()
print(f"loaded {len(vocab)} terms")
print(f"  dietary practices: {counts[Scheme.DIETARY_PRACTICE]}, "
      f"allergen labels: {counts[Scheme.ALLERGEN_LABEL]}, "
      f"health labels: {counts[Scheme.HEALTH_LABEL]}")

print("\nthe same spice under five vernacular names (plus Devanagari):")
for surface in ["haldi", "holud", "halad", "pasupu", "manjal", "हल्दी"]:
    concept, kind = vocab.lookup_term(surface)[0]
    print(f"  {surface:10s} -> {concept.iri}  ({kind.value})")

print("\na food homonym: 'chawal' is an ingredient AND a dish:")
for concept, kind in vocab.lookup_term("chawal"):
    print(f"  {concept.iri}  ({kind.value})")

print("\nupserts are atomic; invariant violations leave the store unchanged:")
rev = vocab.upsert_term(VocabularyTerm.create(Scheme.INGREDIENT, "kokum"))
print(f"  added 'kokum' -> revision {rev}")
dupe = VocabularyTerm(
    id=ConceptId("https://kgforge.example.org/ingredient/kokum-dupe"),
    pref_label=LangString("kokum"),
    scheme=Scheme.INGREDIENT,
)
try:
    vocab.upsert_term(dupe)
except VocabularyError as exc:
    print(f"  duplicate rejected: {exc}")
print(f"  store still at revision {vocab.revision} with {len(vocab)} terms")
