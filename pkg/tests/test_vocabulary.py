"""Vocabulary store: loading, lookup, atomic upserts, invariants."""

from decimal import Decimal

import pytest

from kgforge.ontology import (
    ConceptId,
    LangString,
    MatchKind,
    Scheme,
    VocabularyError,
    VocabularyStore,
    VocabularyTerm,
)
from kgforge.ontology.vocabulary import store_from_triples
from kgforge.kgstore import turtle

from conftest import BASE


class TestSeedLoading:
    def test_diet_label_counts(self, vocab):
        counts = vocab.counts_by_scheme()
        assert counts[Scheme.DIETARY_PRACTICE] == 14
        assert counts[Scheme.ALLERGEN_LABEL] == 21
        assert counts[Scheme.HEALTH_LABEL] == 22

    def test_empty_vocabulary_is_fine(self, tmp_path):
        from kgforge.ontology import load_vocabulary

        path = tmp_path / "empty.ttl"
        path.write_text("", encoding="utf-8")
        store = load_vocabulary(path)
        assert len(store) == 0

    def test_broader_cycle_is_rejected(self):
        a = ConceptId(f"{BASE}/cuisine/a")
        b = ConceptId(f"{BASE}/cuisine/b")
        terms = {
            a: VocabularyTerm(a, LangString("A"), Scheme.CUISINE, broader=b),
            b: VocabularyTerm(b, LangString("B"), Scheme.CUISINE, broader=a),
        }
        with pytest.raises(VocabularyError) as err:
            store_from_triples(
                VocabularyStore(base=BASE, terms=terms).to_triples(), base=BASE
            )
        assert "cycle" in str(err.value)
        assert "a" in str(err.value) and "b" in str(err.value)

    def test_vessel_units_carry_grams(self, vocab, units):
        bowl = vocab.lookup_term("bowl", scheme=Scheme.UNIT)[0][0]
        definition = units.get(bowl)
        assert definition.grams_equivalent == Decimal("250")


class TestLookup:
    def test_turmeric_vernacular_names(self, vocab):
        expected = ConceptId(f"{BASE}/ingredient/turmeric")
        for surface in ["haldi", "holud", "halad", "pasupu", "manjal"]:
            hits = vocab.lookup_term(surface)
            assert hits and hits[0][0] == expected, surface
            assert hits[0][1] == MatchKind.EXACT_ALT

    def test_identity_lookup(self, vocab):
        hits = vocab.lookup_term("turmeric")
        assert hits[0] == (ConceptId(f"{BASE}/ingredient/turmeric"), MatchKind.EXACT_PREF)

    def test_devanagari_alias(self, vocab):
        hits = vocab.lookup_term("हल्दी")
        assert hits and hits[0][0] == ConceptId(f"{BASE}/ingredient/turmeric")

    def test_chawal_homonym(self, vocab):
        scoped = vocab.lookup_term("chawal", scheme=Scheme.INGREDIENT)
        assert [c.iri for c, _ in scoped] == [f"{BASE}/ingredient/raw-rice"]
        both = vocab.lookup_term("chawal")
        iris = {c.iri for c, _ in both}
        assert iris == {f"{BASE}/ingredient/raw-rice", f"{BASE}/recipe/steamed-rice"}

    def test_unknown_surface_is_empty(self, vocab):
        assert vocab.lookup_term("xyzzy-unknown") == []

    def test_case_and_diacritic_normalization(self, vocab):
        assert vocab.lookup_term("TURMERIC")[0][0].slug == "turmeric"
        assert vocab.lookup_term("Túrmeric")[0][1] == MatchKind.NORMALIZED


class TestUpsert:
    def _fresh(self, vocab):
        return VocabularyStore(base=BASE, terms=dict(vocab.terms))

    def test_insert_increments_revision(self, vocab):
        store = self._fresh(vocab)
        term = VocabularyTerm.create(
            Scheme.INGREDIENT, "pudina chutney", base=BASE,
            alt_labels=[("mint chutney spread", "en")],
        )
        before = store.revision
        rev = store.upsert_term(term)
        assert rev == before + 1
        assert store.get(term.id) is term

    def test_idempotent_content_still_increments(self, vocab):
        store = self._fresh(vocab)
        term = VocabularyTerm.create(Scheme.INGREDIENT, "kokum", base=BASE)
        r1 = store.upsert_term(term)
        r2 = store.upsert_term(term)
        assert r2 == r1 + 1
        assert store.audit[-1].changed is False
        assert store.audit[-2].changed is True
        assert store.audit[-1].content_hash == store.audit[-2].content_hash

    def test_duplicate_pref_label_rejected(self, vocab):
        store = self._fresh(vocab)
        dupe = VocabularyTerm(
            id=ConceptId(f"{BASE}/ingredient/turmeric-2"),
            pref_label=LangString("turmeric"),
            scheme=Scheme.INGREDIENT,
        )
        size = len(store)
        rev = store.revision
        with pytest.raises(VocabularyError, match="duplicate pref_label"):
            store.upsert_term(dupe)
        assert len(store) == size and store.revision == rev

    def test_cycle_rejected_atomically(self, vocab):
        store = self._fresh(vocab)
        north = ConceptId(f"{BASE}/cuisine/north-indian")
        indian = store.get(ConceptId(f"{BASE}/cuisine/indian"))
        bad = VocabularyTerm(
            id=indian.id, pref_label=indian.pref_label, scheme=indian.scheme,
            broader=north,
        )
        with pytest.raises(VocabularyError, match="cycle"):
            store.upsert_term(bad)
        assert store.get(indian.id).broader is None

    def test_upsert_sequences_keep_invariants(self, vocab):
        from kgforge.ontology import verify_invariants

        store = self._fresh(vocab)
        for i in range(10):
            store.upsert_term(
                VocabularyTerm.create(Scheme.INGREDIENT, f"test ingredient {i}", base=BASE)
            )
        assert verify_invariants(store.terms) == []


class TestRoundTrip:
    def test_turtle_round_trip(self, vocab, tmp_path):
        path = tmp_path / "vocab.ttl"
        vocab.save(path)
        from kgforge.ontology import load_vocabulary

        reloaded = load_vocabulary(path, base=BASE)
        assert reloaded.counts_by_scheme() == vocab.counts_by_scheme()
        assert set(reloaded.terms) == set(vocab.terms)
        for cid, term in vocab.terms.items():
            assert reloaded.terms[cid].content_hash() == term.content_hash(), cid

    def test_rdfxml_round_trip(self, vocab, tmp_path):
        path = tmp_path / "vocab.rdf"
        vocab.save(path)
        from kgforge.ontology import load_vocabulary

        reloaded = load_vocabulary(path, base=BASE)
        assert set(reloaded.terms) == set(vocab.terms)
        for cid, term in vocab.terms.items():
            assert reloaded.terms[cid].content_hash() == term.content_hash(), cid

    def test_malformed_turtle_names_position(self, tmp_path):
        from kgforge.kgstore.turtle import TurtleParseError

        with pytest.raises(TurtleParseError, match="line"):
            turtle.loads("<https://x.example/a> <https://x.example/b> ???")
