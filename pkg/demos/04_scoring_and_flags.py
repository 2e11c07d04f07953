#!/usr/bin/env python3
"""Soundness scoring: +1/-1 over card vs LLM tuples, flags for the curator.

Run from the repo root: python demos/04_scoring_and_flags.py
"""

from pathlib import Path

from kgforge.extract import Channel, Tuple, TupleSet
from kgforge.ontology import Scheme, load_vocabulary
from kgforge.resolve import PropertyMap, resolve_entity
from kgforge.ontology.concepts import normalize_surface
from kgforge.soundness import candidate_tuples, flag_inconsistencies, score_tuples

ROOT = Path(__file__).resolve().parent.parent
SEED = ROOT / "src" / "kgforge" / "seed"
vocab = load_vocabulary(SEED / "vocabulary.ttl")
pm = PropertyMap.load(SEED / "property_map.yaml")

card = TupleSet(subject="demo")
for prop, value in [("name", "Kadai Paneer"), ("cuisine", "North Indian"),
                    ("has_ingredient", "paneer"), ("has_ingredient", "tomato"),
                    ("has_ingredient", "garam masala")]:
    card.add(Tuple("demo", prop, value, Channel.CARD))

llm = TupleSet(subject="demo")
for prop, value in [("name", "Kadai Paneer"), ("cuisine", "South Indian"),
                    ("has_ingredient", "paneer"), ("has_ingredient", "kadahi")]:
    llm.add(Tuple("demo", prop, value, Channel.LLM))

result = score_tuples(card, llm, vocab, pm)
print(f"total soundness score: {result.total}")
for s in result.scored:
    sign = "+1" if s.score > 0 else "-1"
    print(f"  {sign} [{s.basis.value:18s}] {s.tuple.source.value:4s} "
          f"{s.tuple.property} = {s.tuple.value_text()}")

resolutions = {
    normalize_surface(v): resolve_entity(v, Scheme.INGREDIENT, vocab)
    for v in ["kadahi"]
}
flags = flag_inconsistencies(result.scored, None, [], entry_id="demo",
                             created_at="2024-07-15T00:00:00Z",
                             resolutions=resolutions)
print("\nflags for the curator:")
for f in flags:
    print(f"  {f.reason.value:22s} {f.detail}")

print("\nknowledge-graph candidates (the +1 tuples, card-preferred):")
for t in candidate_tuples(result.scored).sorted():
    print(f"  {t.source.value:4s} {t.property} = {t.value_text()}")
