"""Entity clustering: LSH candidates, exact-Jaccard verification, union-find.

Final clusters are the connected components of the verified >=threshold
similarity graph, so they match brute-force threshold clustering whenever
the LSH candidate set covers every above-threshold pair. Verification after
LSH also makes the result deterministic and independent of input order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .lsh import lsh_candidate_pairs
from .minhash import MinHashConfig, exact_jaccard


@dataclass
class EntityCluster:
    members: list[tuple[str, str | None]]  # (surface, entry provenance)
    representative: str
    verified_similarity: float

    def surfaces(self) -> list[str]:
        return sorted({m[0] for m in self.members})


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def cluster_entities(
    surfaces: list[str] | list[tuple[str, str | None]],
    config: MinHashConfig = MinHashConfig(),
) -> list[EntityCluster]:
    """Cluster near-duplicate surfaces. Accepts bare surfaces or
    (surface, provenance) pairs; duplicates count toward representative
    frequency. Returns clusters sorted by representative."""
    items: list[tuple[str, str | None]] = [
        (s, None) if isinstance(s, str) else (s[0], s[1]) for s in surfaces
    ]
    if not items:
        return []

    unique: list[str] = sorted({surface for surface, _ in items})
    index_of = {surface: i for i, surface in enumerate(unique)}
    frequency = Counter(surface for surface, _ in items)

    candidates = lsh_candidate_pairs(unique, config)
    verified: dict[tuple[int, int], float] = {}
    uf = _UnionFind(len(unique))
    for i, j in sorted(candidates):
        similarity = exact_jaccard(unique[i], unique[j], config.shingle_size)
        if similarity >= config.merge_threshold:
            verified[(i, j)] = similarity
            uf.union(i, j)

    groups: dict[int, list[int]] = {}
    for i in range(len(unique)):
        groups.setdefault(uf.find(i), []).append(i)

    clusters: list[EntityCluster] = []
    for root, group in groups.items():
        group_set = set(group)
        surfaces_in = [unique[i] for i in group]
        representative = min(
            surfaces_in, key=lambda s: (-frequency[s], len(s), s)
        )
        edge_sims = [
            sim for (i, j), sim in verified.items()
            if i in group_set and j in group_set
        ]
        verified_similarity = min(edge_sims) if edge_sims else 1.0
        members = sorted(
            (surface, prov) for surface, prov in items if surface in set(surfaces_in)
        )
        clusters.append(EntityCluster(
            members=members,
            representative=representative,
            verified_similarity=verified_similarity,
        ))
    return sorted(clusters, key=lambda c: c.representative)
