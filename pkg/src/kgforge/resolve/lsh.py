"""Banded locality-sensitive hashing over MinHash signatures.

Signatures split into b bands of r rows; two surfaces are a candidate pair
iff their signatures agree on every row of at least one band. With the
default 32x4 banding the S-curve midpoint sits near Jaccard 0.42, so pairs
at or above the 0.6 merge threshold are candidates with high probability;
exact verification downstream removes false positives.
"""

from __future__ import annotations

from .minhash import MinHashConfig, MinHashSignature, minhash_signature


def band_keys(signature: MinHashSignature, config: MinHashConfig) -> list[tuple]:
    rows = config.rows
    return [
        (band, signature.values[band * rows:(band + 1) * rows])
        for band in range(config.bands)
    ]


def lsh_candidate_pairs(
    surfaces: list[str], config: MinHashConfig = MinHashConfig()
) -> set[tuple[int, int]]:
    """Candidate index pairs (i < j) whose signatures collide in >= 1 band."""
    if len(surfaces) < 2:
        return set()
    signatures = [minhash_signature(s, config) for s in surfaces]
    buckets: dict[tuple, list[int]] = {}
    for index, signature in enumerate(signatures):
        for key in band_keys(signature, config):
            buckets.setdefault(key, []).append(index)
    pairs: set[tuple[int, int]] = set()
    for members in buckets.values():
        if len(members) < 2:
            continue
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                pairs.add((members[a], members[b]))
    return pairs
