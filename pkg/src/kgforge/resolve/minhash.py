"""MinHash signatures over character 3-gram shingles.

Each signature slot keeps the minimum of a seeded 64-bit hash over the
surface's shingles; the fraction of equal slots between two signatures
estimates their exact shingle-set Jaccard similarity. Shingle hashes come
from blake2b (stable across runs and platforms); per-slot mixing uses a
splitmix64 finalizer, vectorized with numpy.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

from ..ontology.concepts import normalize_surface


@dataclass(frozen=True)
class MinHashConfig:
    num_hashes: int = 128
    bands: int = 32
    rows: int = 4
    shingle_size: int = 3
    seed: int = 7
    merge_threshold: float = 0.6

    def __post_init__(self) -> None:
        if self.bands * self.rows != self.num_hashes:
            raise ValueError(
                f"bands x rows must equal num_hashes "
                f"({self.bands}x{self.rows} != {self.num_hashes})"
            )

    @property
    def slot_seeds(self) -> np.ndarray:
        return _seed_stream(self.seed, self.num_hashes)


def _splitmix64(x: np.ndarray) -> np.ndarray:
    x = (x + np.uint64(0x9E3779B97F4A7C15)).astype(np.uint64)
    x ^= x >> np.uint64(30)
    x = (x * np.uint64(0xBF58476D1CE4E5B9)).astype(np.uint64)
    x ^= x >> np.uint64(27)
    x = (x * np.uint64(0x94D049BB133111EB)).astype(np.uint64)
    x ^= x >> np.uint64(31)
    return x


def _seed_stream(seed: int, count: int) -> np.ndarray:
    offset = np.uint64((seed * 0x5851F42D4C957F2D) % (1 << 64))
    return _splitmix64(np.arange(1, count + 1, dtype=np.uint64) + offset)


def shingles(surface: str, size: int = 3) -> frozenset[str]:
    """Character n-gram shingle set of the normalized surface. Surfaces
    shorter than the shingle size yield themselves as the only shingle."""
    norm = normalize_surface(surface)
    if not norm:
        raise ValueError(f"surface is empty after normalization: {surface!r}")
    if len(norm) < size:
        return frozenset([norm])
    return frozenset(norm[i:i + size] for i in range(len(norm) - size + 1))


def exact_jaccard(a: str, b: str, size: int = 3) -> float:
    """Exact shingle-set Jaccard similarity of two surfaces."""
    sa, sb = shingles(a, size), shingles(b, size)
    return len(sa & sb) / len(sa | sb)


def _shingle_hash(shingle: str) -> int:
    return int.from_bytes(
        hashlib.blake2b(shingle.encode("utf-8"), digest_size=8).digest(), "big"
    )


@dataclass(frozen=True)
class MinHashSignature:
    values: tuple[int, ...]
    shingle_size: int

    def __len__(self) -> int:
        return len(self.values)


def minhash_signature(surface: str, config: MinHashConfig = MinHashConfig()) -> MinHashSignature:
    """Deterministic signature of ``surface`` under the configured seed set."""
    shingle_set = shingles(surface, config.shingle_size)
    hashes = np.array(sorted(_shingle_hash(s) for s in shingle_set), dtype=np.uint64)
    mixed = _splitmix64(hashes[:, None] ^ config.slot_seeds[None, :])
    minima = mixed.min(axis=0)
    return MinHashSignature(tuple(int(v) for v in minima), config.shingle_size)


def estimated_similarity(a: MinHashSignature, b: MinHashSignature) -> float:
    """Estimated Jaccard: fraction of equal signature components."""
    if len(a) != len(b):
        raise ValueError("signatures have different lengths")
    equal = sum(1 for x, y in zip(a.values, b.values) if x == y)
    return equal / len(a)
