#!/usr/bin/env python3
"""Entity resolution: MinHash estimates, LSH clustering, concept lookup
with cross-scheme and multi-word near-misses.

Run from the repo root: python demos/03_resolution.py
"""

from pathlib import Path

from kgforge.ontology import Scheme, load_vocabulary
from kgforge.resolve import (
    MinHashConfig,
    Unresolved,
    cluster_entities,
    estimated_similarity,
    exact_jaccard,
    minhash_signature,
    resolve_entity,
)

SEED = Path(__file__).resolve().parent.parent / "src" / "kgforge" / "seed"
vocab = load_vocabulary(SEED / "vocabulary.ttl")

print("MinHash estimates vs exact 3-gram Jaccard:")
for a, b in [("kadai", "kadahi"), ("garam masala", "garam masalaa"), ("tawa", "handi")]:
    est = estimated_similarity(minhash_signature(a), minhash_signature(b))
    print(f"  {a!r:18} vs {b!r:18} exact={exact_jaccard(a, b):.3f} est={est:.3f}")

print("\nclustering noisy cookware surfaces (threshold 0.4 for these short words):")
surfaces = ["kadai", "kadahi", "kadaii", "tawa", "tava", "handi", "handi", "haandi"]
for cluster in cluster_entities(surfaces, MinHashConfig(merge_threshold=0.4)):
    print(f"  {cluster.representative!r:10} <- {cluster.surfaces()} "
          f"(verified >= {cluster.verified_similarity:.2f})")

print("\nresolving surfaces into the ingredient scheme:")
for surface in ["pasupu", "turmeric", "kadahi", "pudina"]:
    outcome = resolve_entity(surface, Scheme.INGREDIENT, vocab)
    if isinstance(outcome, Unresolved):
        nears = ", ".join(f"{n.label} [{n.kind}:{n.scheme.value}]"
                          for n in outcome.near_misses[:3])
        print(f"  {surface!r:12} UNRESOLVED ({outcome.reason}); near misses: {nears}")
    else:
        print(f"  {surface!r:12} -> {outcome.iri}")
