"""Acceptance suite: one test per acceptance criterion, each printing a
pass/fail line (run with -s or check the captured output). Tolerances and
budgets are pinned here, not deferred.

Criteria:
  A1  restriction rules agree 100% with a brute-force category scan (< 1 s)
  A2  scoring totals equal an independent brute-force scorer on 50 random
      tuple-set pairs (< 5 s)
  A3  LSH candidates cover every exact-Jaccard >= 0.6 pair on the
      200-surface fixture across 10 fixed seeds, and clustering equals
      brute force (< 10 s)
  A4  MinHash mean absolute estimation error over >= 1000 random pairs
      <= 1.96/sqrt(128) + 0.02
  A5  serves-4 / 1 kg fixture scales to 250 g per serving exactly; the
      bowl unit is 250 g
  A6  the five turmeric vernacular names resolve to one concept; "chawal"
      yields distinct ingredient and recipe concepts
  A7  offline pipeline over the 20-page corpus is byte-deterministic,
      graph stats match a sidecar scan, second ingest delta is zero (< 60 s)
  A8  RDF/XML and Turtle round-trip 100 random graphs triple-for-triple
  A9  scripted curation resolves every fixture flag, audit replay
      reproduces the final state, round two opens strictly fewer flags
  A10 seed vocabulary counts: 14 dietary practices, 21 allergen labels,
      22 health labels
"""

import hashlib
import json
import math
import random
import shutil
import time
from contextlib import contextmanager
from decimal import Decimal
from pathlib import Path

import pytest

from conftest import BASE, DATA, FIXTURES, SEED


@contextmanager
def criterion(name: str, budget_seconds: float | None = None):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"[FAIL] {name}")
        raise
    elapsed = time.perf_counter() - start
    if budget_seconds is not None:
        assert elapsed < budget_seconds, f"{name}: {elapsed:.2f}s over budget {budget_seconds}s"
        print(f"[PASS] {name} ({elapsed:.2f}s)")
    else:
        print(f"[PASS] {name}")


# --------------------------------------------------------------------- A1

def test_a1_restriction_rules_match_brute_force(vocab, ingredient_db, rule_set):
    from kgforge.ontology import ConceptId, IngredientUsage, Quantity, Recipe, Scheme

    raw = json.loads((SEED / "ingredients.json").read_text(encoding="utf-8"))
    categories: dict[str, tuple[str, set]] = {}
    for row in raw["ingredients"]:
        value = (row["origin"], set(row.get("categories", [])))
        for name in row["names"]:
            categories[name["text"].lower()] = value

    def brute_force(labels: list[str], ingredients: list[str]) -> list[str]:
        infos = [categories[i.lower()] for i in ingredients]
        out = []
        def has(pred):
            return any(pred(origin, cats) for origin, cats in infos)
        meat_or_egg = lambda o, c: o == "animal" and ({"meat", "egg"} & c)
        jain_bad = lambda o, c: (("meat" in c and o == "animal")
                                 or ("root_vegetable" in c and o == "plant")
                                 or "bulb_vegetable" in c)
        if "non-vegetarian" in labels and not has(meat_or_egg):
            out.append("R1")
        if "vegetarian" in labels and has(meat_or_egg):
            out.append("R2")
        if "jain" in labels and has(jain_bad):
            out.append("R3")
        return out

    fixture = json.loads((DATA / "restriction_recipes.json").read_text(encoding="utf-8"))
    assert len(fixture["recipes"]) == 30

    with criterion("A1 restriction-rule suite (30 recipes, oracle agreement)", 1.0):
        from kgforge.ontology import check_restrictions

        for row in fixture["recipes"]:
            usages = []
            for surface in row["ingredients"]:
                hits = vocab.lookup_term(surface, scheme=Scheme.INGREDIENT)
                assert hits, f"fixture ingredient {surface!r} must be in the vocabulary"
                usages.append(IngredientUsage(
                    ingredient=hits[0][0],
                    quantity=Quantity(Decimal(1), unit=None, approximate=True),
                    raw_surface=surface,
                ))
            recipe = Recipe(
                id=ConceptId(f"{BASE}/recipe/{row['name'].lower().replace(' ', '-')}"),
                name=row["name"],
                serving_size=2,
                ingredients=usages,
                diet_labels=[ConceptId(f"{BASE}/dietary_practice/{l}") for l in row["labels"]],
            )
            got = sorted(v.rule_id for v in check_restrictions(recipe, rule_set.rules, ingredient_db))
            oracle = sorted(brute_force(row["labels"], row["ingredients"]))
            hand = sorted(row["expected_violations"])
            assert got == oracle == hand, (row["name"], got, oracle, hand)


# --------------------------------------------------------------------- A2

def test_a2_scoring_oracle_on_random_pairs(vocab):
    from kgforge.soundness import score_tuples
    from test_soundness import MULTI, SCHEMES_OF, brute_force_total, make_sets, prop_map

    known = ["onion", "turmeric", "paneer", "chicken", "garam masala", "haldi",
             "tomato", "spinach", "ghee", "cumin"]
    unknown = ["snozzberry", "kokum", "gondhoraj", "flibber"]
    cookware = ["kadahi", "handi", "tawa"]
    cuisines = ["South Indian", "North Indian", "Bengali", "Punjabi", "Awadhi"]
    rng = random.Random(20240715)

    with criterion("A2 scoring oracle (50 random tuple-set pairs, exact totals)", 5.0):
        for trial in range(50):
            card_rows, llm_rows = [], []
            for rows in (card_rows, llm_rows):
                if rng.random() < 0.9:
                    rows.append(("cuisine", rng.choice(cuisines)))
                if rng.random() < 0.8:
                    rows.append(("name", rng.choice(["Dish A", "Dish B", "Dish C"])))
                if rng.random() < 0.5:
                    rows.append(("serving_size", str(rng.randint(1, 8))))
                for _ in range(rng.randint(0, 7)):
                    rows.append(("has_ingredient", rng.choice(known + unknown + cookware)))
                for _ in range(rng.randint(0, 3)):
                    rows.append(("has_cooking_char", rng.choice(cookware + ["roast"])))
                if rng.random() < 0.3:
                    rows.append(("diet_label", rng.choice(["Jain", "Vegetarian", "weirdo"])))
            card, llm = make_sets(card_rows, llm_rows)
            result = score_tuples(card, llm, vocab, prop_map())
            expected = brute_force_total(card_rows, llm_rows, vocab, SCHEMES_OF, MULTI)
            assert result.total == expected, f"trial {trial}: {result.total} != {expected}"


# --------------------------------------------------------------------- A3

def test_a3_lsh_fidelity_and_clustering():
    from kgforge.resolve import MinHashConfig, cluster_entities, lsh_candidate_pairs
    from test_resolve import oracle_components, oracle_jaccard

    surfaces = [l for l in (DATA / "surfaces_200.txt").read_text(encoding="utf-8").splitlines() if l]
    assert len(surfaces) == 200

    with criterion("A3 LSH fidelity (k=128 b=32 r=4, 10 seeds, brute-force clustering)", 10.0):
        above = [
            (i, j)
            for i in range(len(surfaces))
            for j in range(i + 1, len(surfaces))
            if oracle_jaccard(surfaces[i], surfaces[j]) >= 0.6
        ]
        assert above
        for seed in range(101, 111):
            config = MinHashConfig(num_hashes=128, bands=32, rows=4, seed=seed)
            candidates = lsh_candidate_pairs(surfaces, config)
            missing = [p for p in above if p not in candidates]
            assert not missing, f"seed {seed}: LSH missed {missing[:3]}"
        clusters = cluster_entities(surfaces, MinHashConfig(seed=101))
        ours = {frozenset(c.surfaces()) for c in clusters}
        assert ours == oracle_components(surfaces, 0.6)


# --------------------------------------------------------------------- A4

def test_a4_estimator_accuracy():
    from kgforge.resolve import MinHashConfig, estimated_similarity, minhash_signature
    from test_resolve import oracle_jaccard

    rng = random.Random(424242)
    alphabet = "abcdefghijklmnopqrstuvwxyz "
    pairs = []
    while len(pairs) < 1000:
        base = "".join(rng.choice(alphabet) for _ in range(rng.randint(5, 24))).strip()
        if len(base) < 4:
            continue
        if rng.random() < 0.5:
            chars = list(base)
            for _ in range(rng.randint(1, 4)):
                pos = rng.randrange(len(chars))
                op = rng.randrange(3)
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

    bound = 1.96 / math.sqrt(128) + 0.02
    with criterion(f"A4 estimator accuracy (1000 pairs, mean |err| <= {bound:.4f})"):
        config = MinHashConfig(seed=3)
        total = 0.0
        for a, b in pairs:
            est = estimated_similarity(minhash_signature(a, config), minhash_signature(b, config))
            total += abs(est - oracle_jaccard(a, b))
        mean_error = total / len(pairs)
        assert mean_error <= bound, mean_error


# --------------------------------------------------------------------- A5

def test_a5_scaling_and_bowl(vocab, units):
    from kgforge.extract import load_site_profiles, parse_recipe_card
    from kgforge.ontology import Scheme, scale_recipe
    from test_rules_and_scaling import make_recipe

    with criterion("A5 scaling: 1 kg / serves 4 -> 250 g exactly; bowl = 250 g"):
        profiles = load_site_profiles(SEED / "site_profiles.yaml")
        html = (FIXTURES / "pages" / "chicken-chettinad.html").read_text(encoding="utf-8")
        card = parse_recipe_card("e1", html, profiles["masalajournal.example"])
        by_prop = card.by_property()
        assert by_prop["servings"][0].value == "4"
        lines = [t.value for t in by_prop["has_ingredient_raw"]]
        assert "1 kg chicken" in lines

        recipe = make_recipe(vocab, "Chicken Chettinad", lines, serving_size=4)
        dish = scale_recipe(recipe, 1, units)
        chicken = [u for u in dish.scaled_ingredients
                   if getattr(u.ingredient, "slug", "") == "chicken"][0]
        assert chicken.quantity.magnitude == Decimal("250")
        assert chicken.quantity.unit.slug == "gram"

        bowl = vocab.lookup_term("bowl", scheme=Scheme.UNIT)[0][0]
        assert units.get(bowl).grams_equivalent == Decimal("250")


# --------------------------------------------------------------------- A6

def test_a6_alias_resolution(vocab):
    from kgforge.ontology import Scheme

    with criterion("A6 turmeric vernacular names + chawal homonym"):
        concepts = set()
        for surface in ["haldi", "holud", "halad", "pasupu", "manjal"]:
            hits = vocab.lookup_term(surface)
            assert hits, surface
            concepts.add(hits[0][0])
        assert len(concepts) == 1
        assert concepts.pop().iri == f"{BASE}/ingredient/turmeric"

        as_ingredient = vocab.lookup_term("chawal", scheme=Scheme.INGREDIENT)
        as_recipe = vocab.lookup_term("chawal", scheme=Scheme.RECIPE)
        assert as_ingredient and as_recipe
        assert as_ingredient[0][0] != as_recipe[0][0]
        assert as_ingredient[0][0].iri == f"{BASE}/ingredient/raw-rice"
        assert as_recipe[0][0].iri == f"{BASE}/recipe/steamed-rice"


# --------------------------------------------------------------------- A7

def _fresh_pipeline_workspace(root: Path):
    from test_pipeline import make_workspace

    ws = make_workspace(root)
    return ws


def _artifact_digests(root: Path) -> dict[str, str]:
    out = {}
    for pattern in ["tuples/*.xml", "resolved/*.xml", "flags.jsonl", "graph.owl"]:
        for p in sorted(Path(root).glob(pattern)):
            out[str(p.relative_to(root))] = hashlib.sha256(p.read_bytes()).hexdigest()
    return out


def test_a7_end_to_end_offline_pipeline(tmp_path):
    with criterion("A7 offline pipeline determinism + stats oracle + delta-zero ingest", 60.0):
        workspaces = []
        for run in ("one", "two"):
            ws = _fresh_pipeline_workspace(tmp_path / run)
            aggregated = ws.run_pipeline(allow_open_flags=True)
            assert [r["stage"] for r in aggregated["reports"]][-1] == "ingest"
            workspaces.append(ws)

        a, b = (_artifact_digests(ws.root) for ws in workspaces)
        assert a == b, "runs are not byte-identical"
        assert len(a) >= 80  # 20 entries x 4 tuple files + flags + graph

        # graph stats vs an independent sidecar scan
        ws = workspaces[0]
        from kgforge.kgstore import Graph

        graph = Graph.load(ws.config.path("graph_path"), BASE)
        stats = graph.stats()
        sidecars = [json.loads(p.read_text(encoding="utf-8"))
                    for p in sorted(ws.config.path("corpus_dir").glob("*.meta.json"))]
        assert stats.recipe_count == len(sidecars) == 20
        assert stats.category_count == len({s["recipe_category"] for s in sidecars})

        # second ingest changes nothing
        before = (ws.root / "graph.owl").read_bytes()
        report = ws.run_ingest(allow_open_flags=True)
        assert report.counts["new_triples"] == 0
        assert (ws.root / "graph.owl").read_bytes() == before


# --------------------------------------------------------------------- A8

def test_a8_rdf_round_trip_random_graphs(tmp_path):
    from kgforge.kgstore import Graph
    from test_kgstore import random_graph

    with criterion("A8 RDF round-trip (100 random graphs, RDF/XML and Turtle)"):
        rng = random.Random(18)
        for index in range(100):
            g = random_graph(rng)
            for fmt, suffix in (("rdfxml", ".owl"), ("turtle", ".ttl")):
                path = tmp_path / f"g{index}{suffix}"
                g.serialize(path, format=fmt, include_schema=False)
                loaded = Graph.load(path, BASE)
                assert set(loaded.triples()) == set(g.triples()), (index, fmt)


# --------------------------------------------------------------------- A9

def test_a9_curation_loop(tmp_path):
    from fastapi.testclient import TestClient

    from kgforge.curator import replay_audit
    from kgforge.curator.service import create_app
    from kgforge.curator.store import FlagStore
    from kgforge.soundness import flag_to_dict, read_flag_queue

    with criterion("A9 curation loop: resolve all flags, replay audit, round-2 drop"):
        ws = _fresh_pipeline_workspace(tmp_path / "ws")
        ws.run_crawl(); ws.run_extract(); ws.run_resolve()
        round_one = ws.run_score()
        open_round_one = round_one.counts["flags"]
        assert open_round_one == 6
        shutil.copy(ws.config.path("flags_path"), tmp_path / "flags.initial.jsonl")

        client = TestClient(create_app(ws))

        def flags_by_reason(reason):
            return client.get("/api/flags",
                              params={"reason": reason, "status": "open"}).json()["items"]

        kadahi = [f for f in flags_by_reason("MISCLASSIFIED_SCHEME") if "kadahi" in f["detail"]][0]
        r = client.post(f"/api/flags/{kadahi['id']}/decision",
                        json={"action": "reject", "curator": "script"})
        assert r.status_code == 200

        pc = [f for f in flags_by_reason("MISCLASSIFIED_SCHEME") if "pudina chutney" in f["detail"]][0]
        r = client.post(f"/api/flags/{pc['id']}/decision", json={
            "action": "accept", "curator": "script",
            "vocabulary_addition": {"scheme": "ingredient", "pref_label": "pudina chutney"},
        })
        assert r.status_code == 200
        assert r.json()["side_effects"]["vocabulary_revision"] == 1

        multiword = flags_by_reason("MULTIWORD_SUSPECT")[0]
        suggested = client.get(f"/api/flags/{multiword['id']}").json()["candidates"][0]["label"]
        assert suggested == "pudina chutney"
        r = client.post(f"/api/flags/{multiword['id']}/decision", json={
            "action": "correct", "curator": "script",
            "corrected_tuple": {"property": "has_ingredient", "value": suggested,
                                "source": "LLM"},
        })
        assert r.status_code == 200

        mismatch = flags_by_reason("MISMATCH")[0]
        r = client.post(f"/api/flags/{mismatch['id']}/decision", json={
            "action": "correct", "curator": "script",
            "corrected_tuple": {"property": "cuisine", "value": "North Indian",
                                "source": "LLM"},
        })
        assert r.status_code == 200

        violation = flags_by_reason("RESTRICTION_VIOLATION")[0]
        r = client.post(f"/api/flags/{violation['id']}/decision", json={
            "action": "correct", "curator": "script",
            "corrected_tuple": {"property": "diet_label", "value": "Vegetarian"},
        })
        assert r.status_code == 200

        unknown = flags_by_reason("UNKNOWN_TERM")[0]
        r = client.post(f"/api/flags/{unknown['id']}/decision", json={
            "action": "accept", "curator": "script",
            "vocabulary_addition": {"scheme": "ingredient", "pref_label": "kokum"},
        })
        assert r.status_code == 200

        stats = client.get("/api/stats").json()
        assert stats["flags"]["open_total"] == 0
        assert stats["flags"]["resolved_total"] == 6

        # audit replay over the initial snapshot reproduces the final state
        store = FlagStore(ws)
        initial = read_flag_queue(tmp_path / "flags.initial.jsonl")
        replayed = replay_audit(initial, store.audit.events())
        live = {f.id: flag_to_dict(f) for f in store.all_flags()}
        assert {fid: flag_to_dict(f) for fid, f in replayed.items()} == live

        # round two with the enriched vocabulary: strictly fewer open flags,
        # and the decided records survive the re-score
        round_two = ws.run_score()
        open_round_two = sum(
            1 for f in FlagStore(ws).all_flags() if f.status.value == "open"
        )
        assert open_round_two < open_round_one
        assert round_two.counts["total_score"] > round_one.counts["total_score"]
        stats = client.get("/api/stats").json()
        assert stats["flags"]["resolved_total"] == 6

        # the gate now allows ingest without overrides; stats pass the graph
        # numbers through to the service
        ingest = ws.run_ingest()
        assert ingest.counts["recipes"] == 20
        graph_stats = client.get("/api/stats").json()["graph"]
        assert graph_stats["recipe_count"] == 20


# -------------------------------------------------------------------- A10

def test_a10_vocabulary_seed_counts(vocab):
    from kgforge.ontology import Scheme

    with criterion("A10 seed vocabulary: 14 dietary / 21 allergen / 22 health"):
        counts = vocab.counts_by_scheme()
        assert counts[Scheme.DIETARY_PRACTICE] == 14
        assert counts[Scheme.ALLERGEN_LABEL] == 21
        assert counts[Scheme.HEALTH_LABEL] == 22
