"""Entity resolution: MinHash/LSH clustering, property mapping, concept lookup."""

from .cluster import EntityCluster, cluster_entities
from .entities import NearMiss, Unresolved, resolve_entity
from .lsh import lsh_candidate_pairs
from .minhash import (
    MinHashConfig,
    MinHashSignature,
    estimated_similarity,
    exact_jaccard,
    minhash_signature,
    shingles,
)
from .properties import PropertyMap, PropertySpec

__all__ = [
    "EntityCluster",
    "MinHashConfig",
    "MinHashSignature",
    "NearMiss",
    "PropertyMap",
    "PropertySpec",
    "Unresolved",
    "cluster_entities",
    "estimated_similarity",
    "exact_jaccard",
    "lsh_candidate_pairs",
    "minhash_signature",
    "resolve_entity",
    "shingles",
]
