"""Property tests over the core invariants (hypothesis-driven), plus a real
threaded race on the decision path."""

import threading

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from kgforge.ontology import (
    Scheme,
    VocabularyError,
    VocabularyStore,
    VocabularyTerm,
    verify_invariants,
)
from kgforge.resolve import MinHashConfig, cluster_entities

from conftest import BASE


word = st.text(alphabet="abcdefghijklmnopqrstuvwxyz", min_size=2, max_size=10)
label = st.builds(lambda a, b: f"{a} {b}".strip(), word, st.one_of(st.just(""), word))


class TestVocabularyAtomicity:
    @settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
    @given(labels=st.lists(label, min_size=1, max_size=25))
    def test_any_upsert_sequence_keeps_invariants(self, labels):
        store = VocabularyStore(base=BASE)
        for text in labels:
            term = VocabularyTerm.create(Scheme.INGREDIENT, text, base=BASE)
            try:
                store.upsert_term(term)
            except VocabularyError:
                pass  # rejected duplicates must leave the store unchanged
            assert verify_invariants(store.terms) == []
        # revision is strictly monotone over the audit trail
        revisions = [entry.revision for entry in store.audit]
        assert revisions == sorted(set(revisions))

    @settings(max_examples=25, deadline=None)
    @given(labels=st.lists(word, min_size=2, max_size=12, unique=True))
    def test_rejected_upsert_changes_nothing(self, labels):
        store = VocabularyStore(base=BASE)
        for text in labels:
            store.upsert_term(VocabularyTerm.create(Scheme.INGREDIENT, text, base=BASE))
        snapshot = {cid: t.content_hash() for cid, t in store.terms.items()}
        revision = store.revision
        from kgforge.ontology import ConceptId, LangString

        dupe = VocabularyTerm(
            id=ConceptId(f"{BASE}/ingredient/zz-dupe"),
            pref_label=LangString(labels[0]),
            scheme=Scheme.INGREDIENT,
        )
        with pytest.raises(VocabularyError):
            store.upsert_term(dupe)
        assert {cid: t.content_hash() for cid, t in store.terms.items()} == snapshot
        assert store.revision == revision


class TestClusteringProperties:
    @settings(max_examples=25, deadline=None)
    @given(data=st.data(), surfaces=st.lists(label, min_size=0, max_size=20))
    def test_output_independent_of_input_order(self, data, surfaces):
        surfaces = [s for s in surfaces if s.strip()]
        permuted = data.draw(st.permutations(surfaces))
        config = MinHashConfig(seed=13)
        a = cluster_entities(surfaces, config)
        b = cluster_entities(list(permuted), config)
        assert [(c.representative, c.surfaces(), c.verified_similarity) for c in a] == [
            (c.representative, c.surfaces(), c.verified_similarity) for c in b
        ]

    @settings(max_examples=25, deadline=None)
    @given(surfaces=st.lists(word, min_size=1, max_size=15))
    def test_every_surface_lands_in_exactly_one_cluster(self, surfaces):
        clusters = cluster_entities(surfaces)
        seen: list[str] = []
        for c in clusters:
            seen.extend(c.surfaces())
        assert sorted(seen) == sorted(set(surfaces))


class TestDecisionRace:
    def test_concurrent_decisions_exactly_one_wins(self, tmp_path):
        from kgforge.curator.store import ConflictError, Decision, FlagStore
        from test_pipeline import make_workspace

        ws = make_workspace(tmp_path / "ws")
        ws.run_crawl(); ws.run_extract(); ws.run_resolve(); ws.run_score()
        store = FlagStore(ws)
        flag = [f for f in store.all_flags() if f.reason.value == "MISMATCH"][0]

        outcomes: list[str] = []
        lock = threading.Lock()

        def decide(curator: str) -> None:
            try:
                store.submit_decision(Decision(flag.id, "reject", curator=curator))
                result = "ok"
            except ConflictError:
                result = "conflict"
            with lock:
                outcomes.append(result)

        threads = [threading.Thread(target=decide, args=(f"curator-{i}",)) for i in range(4)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert sorted(outcomes) == ["conflict", "conflict", "conflict", "ok"]
        decisions = [e for e in store.audit.events() if e["kind"] == "decision"]
        assert len(decisions) == 1  # exactly one audit event for the winner
