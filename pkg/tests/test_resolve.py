"""MinHash/LSH entity resolution against independent brute-force oracles.

The oracle here recomputes shingle sets and Jaccard similarity from scratch
(plain Python sets) so it shares no code with the implementation under test.
"""

import math
import random

import pytest

from kgforge.ontology import Scheme
from kgforge.resolve import (
    MinHashConfig,
    Unresolved,
    cluster_entities,
    estimated_similarity,
    lsh_candidate_pairs,
    minhash_signature,
    resolve_entity,
)

from conftest import DATA


# ---------------------------------------------------------------- oracle

def oracle_shingles(text: str, size: int = 3) -> set:
    import re
    import unicodedata

    norm = unicodedata.normalize("NFKD", text.casefold())
    norm = "".join(c for c in norm if not unicodedata.combining(c))
    norm = re.sub(r"[^\w\s]", " ", norm)
    norm = re.sub(r"\s+", " ", norm).strip()
    if len(norm) < size:
        return {norm}
    return {norm[i:i + size] for i in range(len(norm) - size + 1)}


def oracle_jaccard(a: str, b: str) -> float:
    sa, sb = oracle_shingles(a), oracle_shingles(b)
    return len(sa & sb) / len(sa | sb)


def oracle_components(surfaces: list[str], threshold: float) -> set[frozenset]:
    """Brute-force all-pairs threshold clustering via connected components."""
    parent = {s: s for s in surfaces}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for i, a in enumerate(surfaces):
        for b in surfaces[i + 1:]:
            if oracle_jaccard(a, b) >= threshold:
                parent[find(b)] = find(a)
    groups = {}
    for s in surfaces:
        groups.setdefault(find(s), set()).add(s)
    return {frozenset(g) for g in groups.values()}


@pytest.fixture(scope="module")
def surfaces_200():
    return (DATA / "surfaces_200.txt").read_text(encoding="utf-8").split()  # no spaces? use lines


@pytest.fixture(scope="module")
def fixture_surfaces():
    return [l for l in (DATA / "surfaces_200.txt").read_text(encoding="utf-8").splitlines() if l]


class TestSignatures:
    def test_identical_strings_estimate_one(self):
        a = minhash_signature("garam masala")
        b = minhash_signature("garam masala")
        assert a == b
        assert estimated_similarity(a, b) == 1.0

    def test_determinism_across_calls(self):
        cfg = MinHashConfig(seed=11)
        assert minhash_signature("kadahi", cfg) == minhash_signature("kadahi", cfg)

    def test_kadai_kadahi_estimate_close_to_exact(self):
        exact = oracle_jaccard("kadai", "kadahi")
        est = estimated_similarity(minhash_signature("kadai"), minhash_signature("kadahi"))
        assert abs(est - exact) <= 0.15

    def test_disjoint_strings_estimate_near_zero(self):
        assert oracle_jaccard("aaaa", "zzzz") == 0.0
        est = estimated_similarity(minhash_signature("aaaa"), minhash_signature("zzzz"))
        assert est <= 0.1

    def test_empty_after_normalization_rejected(self):
        with pytest.raises(ValueError):
            minhash_signature("  !!  ")

    def test_estimator_mean_absolute_error(self):
        # >= 1000 random pairs; bound from the acceptance criteria
        rng = random.Random(2024)
        alphabet = "abcdefghijklmnopqrstuvwxyz "
        pairs = []
        while len(pairs) < 1000:
            base = "".join(rng.choice(alphabet) for _ in range(rng.randint(5, 24))).strip()
            if len(base) < 4:
                continue
            if rng.random() < 0.5:
                chars = list(base)
                for _ in range(rng.randint(1, 4)):
                    op = rng.randrange(3)
                    pos = rng.randrange(len(chars))
                    if op == 0:
                        chars.insert(pos, rng.choice(alphabet.strip()))
                    elif op == 1 and len(chars) > 4:
                        del chars[pos]
                    else:
                        chars[pos] = rng.choice(alphabet.strip())
                other = "".join(chars).strip()
            else:
                other = "".join(rng.choice(alphabet) for _ in range(rng.randint(5, 24))).strip()
            if len(other) >= 4:
                pairs.append((base, other))

        cfg = MinHashConfig(seed=5)
        total_err = 0.0
        for a, b in pairs:
            est = estimated_similarity(minhash_signature(a, cfg), minhash_signature(b, cfg))
            total_err += abs(est - oracle_jaccard(a, b))
        mean_err = total_err / len(pairs)
        assert mean_err <= 1.96 / math.sqrt(128) + 0.02, mean_err


class TestLsh:
    def test_identical_surfaces_always_candidates(self):
        pairs = lsh_candidate_pairs(["tawa", "tawa", "belan"])
        assert (0, 1) in pairs

    def test_singleton_input(self):
        assert lsh_candidate_pairs(["tawa"]) == set()

    def test_superset_property_on_fixture_all_seeds(self, fixture_surfaces):
        surfaces = fixture_surfaces
        above = [
            (i, j)
            for i in range(len(surfaces))
            for j in range(i + 1, len(surfaces))
            if oracle_jaccard(surfaces[i], surfaces[j]) >= 0.6
        ]
        assert above, "fixture must contain above-threshold pairs"
        for seed in range(101, 111):
            candidates = lsh_candidate_pairs(surfaces, MinHashConfig(seed=seed))
            missing = [p for p in above if p not in candidates]
            assert not missing, f"seed {seed} missed {missing[:5]}"


class TestClustering:
    def test_kadai_family_matches_oracle(self):
        surfaces = ["kadai", "kadahi", "karahi", "tava"]
        for threshold in (0.5, 0.4, 0.3):
            clusters = cluster_entities(surfaces, MinHashConfig(merge_threshold=threshold))
            grouped = {frozenset(c.surfaces()) for c in clusters}
            assert grouped == oracle_components(surfaces, threshold), threshold

    def test_kadai_kadahi_merge_at_their_exact_jaccard(self):
        # oracle: 3-gram Jaccard(kadai, kadahi) = |{kad,ada}| / |{kad,ada,dai,dah,ahi}| = 0.4
        assert oracle_jaccard("kadai", "kadahi") == pytest.approx(0.4)
        clusters = cluster_entities(["kadai", "kadahi"], MinHashConfig(merge_threshold=0.4))
        assert len(clusters) == 1
        assert clusters[0].verified_similarity == pytest.approx(0.4)

    def test_all_identical(self):
        clusters = cluster_entities(["tawa", "tawa", "tawa"])
        assert len(clusters) == 1
        assert clusters[0].verified_similarity == 1.0
        assert clusters[0].representative == "tawa"

    def test_empty_input(self):
        assert cluster_entities([]) == []

    def test_matches_brute_force_on_fixture(self, fixture_surfaces):
        clusters = cluster_entities(fixture_surfaces, MinHashConfig(seed=101))
        ours = {frozenset(c.surfaces()) for c in clusters}
        assert ours == oracle_components(fixture_surfaces, 0.6)

    def test_order_independence(self, fixture_surfaces):
        subset = fixture_surfaces[:60]
        a = cluster_entities(subset)
        shuffled = list(subset)
        random.Random(9).shuffle(shuffled)
        b = cluster_entities(shuffled)
        assert [(c.representative, c.surfaces()) for c in a] == [
            (c.representative, c.surfaces()) for c in b
        ]

    def test_representative_frequency_then_length(self):
        clusters = cluster_entities(["kadahi", "kadahi", "kadai"],
                                    MinHashConfig(merge_threshold=0.4))
        assert len(clusters) == 1
        assert clusters[0].representative == "kadahi"  # most frequent wins

    def test_multi_member_clusters_meet_threshold(self, fixture_surfaces):
        clusters = cluster_entities(fixture_surfaces)
        for c in clusters:
            if len(c.surfaces()) > 1:
                assert c.verified_similarity >= 0.6


class TestResolveEntity:
    def test_pasupu_resolves_to_turmeric(self, vocab):
        result = resolve_entity("pasupu", Scheme.INGREDIENT, vocab)
        assert result.slug == "turmeric"

    def test_turmeric_identity(self, vocab):
        assert resolve_entity("turmeric", Scheme.INGREDIENT, vocab).slug == "turmeric"

    def test_kadahi_cross_scheme_hit(self, vocab):
        result = resolve_entity("kadahi", Scheme.INGREDIENT, vocab)
        assert isinstance(result, Unresolved)
        hits = result.cross_scheme_hits()
        assert hits and hits[0].scheme is Scheme.COOKWARE
        assert hits[0].label == "kadai"

    def test_pudina_multiword_candidate(self, vocab):
        result = resolve_entity("pudina", Scheme.INGREDIENT, vocab)
        assert isinstance(result, Unresolved)
        labels = [n.label for n in result.multiword_candidates()]
        assert "pudina chutney" in labels

    def test_cluster_representative_fallback(self, vocab):
        from kgforge.resolve import EntityCluster

        clusters = [EntityCluster(
            members=[("turmericc", None), ("turmeric", None)],
            representative="turmeric",
            verified_similarity=0.8,
        )]
        result = resolve_entity("turmericc", Scheme.INGREDIENT, vocab, clusters=clusters)
        assert result.slug == "turmeric"


class TestPropertyMap:
    def test_region_and_style_map_to_cuisine(self, tmp_path):
        from kgforge.resolve import PropertyMap
        from conftest import SEED

        pm = PropertyMap.load(SEED / "property_map.yaml")
        assert pm.map_property_name("region") == "cuisine"
        assert pm.map_property_name("style") == "cuisine"
        assert pm.map_property_name("cuisine") == "cuisine"

    def test_unknown_property_counted(self):
        from kgforge.resolve import PropertyMap

        pm = PropertyMap(aliases={}, properties={})
        assert pm.map_property_name("weirdness") == "weirdness"
        assert pm.unmapped_counts["weirdness"] == 1
