"""Restriction checking, diet-label derivation, scaling, nutrition."""

from decimal import Decimal

import pytest

from kgforge.ontology import (
    ConceptId,
    IngredientUsage,
    Quantity,
    Recipe,
    Scheme,
    ViolationKind,
    check_restrictions,
    compute_nutrition,
    derive_diet_labels,
    parse_ingredient_line,
    scale_dish,
    scale_recipe,
)

from conftest import BASE


def cid(scheme, slug):
    return ConceptId(f"{BASE}/{scheme}/{slug}")


def usage(vocab, line):
    quantity, surface = parse_ingredient_line(line, vocab)
    hits = vocab.lookup_term(surface, scheme=Scheme.INGREDIENT)
    ingredient = hits[0][0] if hits else surface
    return IngredientUsage(ingredient=ingredient, quantity=quantity, raw_surface=line)


def make_recipe(vocab, name, lines, labels=(), serving_size=4, cuisine=None):
    return Recipe(
        id=cid("recipe-instance", name.lower().replace(" ", "-")),
        name=name,
        serving_size=serving_size,
        ingredients=[usage(vocab, l) for l in lines],
        diet_labels=[cid("dietary_practice", l) for l in labels],
        cuisine=cuisine,
    )


class TestRestrictions:
    def test_nonveg_without_meat_violates_r1(self, vocab, ingredient_db, rule_set):
        recipe = make_recipe(
            vocab, "Mislabeled Pulao", ["2 cups rice", "1 onion"], ["non-vegetarian"]
        )
        violations = check_restrictions(recipe, rule_set.rules, ingredient_db)
        assert [v.rule_id for v in violations] == ["R1"]
        assert violations[0].kind is ViolationKind.FAILED

    def test_jain_with_onion_violates_r3(self, vocab, ingredient_db, rule_set):
        recipe = make_recipe(
            vocab, "Jain Sabzi", ["2 tomatoes", "1 onion"], ["jain"]
        )
        violations = check_restrictions(recipe, rule_set.rules, ingredient_db)
        assert [v.rule_id for v in violations] == ["R3"]
        witness_iris = [w[0] for w in violations[0].witnesses]
        assert f"{BASE}/ingredient/onion" in witness_iris

    def test_no_trigger_labels_is_vacuous(self, vocab, ingredient_db, rule_set):
        recipe = make_recipe(vocab, "Plain Rice", ["2 cups rice"])
        assert check_restrictions(recipe, rule_set.rules, ingredient_db) == []

    def test_unresolved_ingredient_yields_unresolvable(self, vocab, ingredient_db, rule_set):
        recipe = make_recipe(
            vocab, "Mystery Curry", ["100 g snozzberry"], ["non-vegetarian"]
        )
        violations = check_restrictions(recipe, rule_set.rules, ingredient_db)
        assert [v.kind for v in violations] == [ViolationKind.UNRESOLVABLE]

    def test_consistent_nonveg_passes(self, vocab, ingredient_db, rule_set):
        recipe = make_recipe(
            vocab, "Chicken Curry", ["1 kg chicken", "2 onions"], ["non-vegetarian"]
        )
        assert check_restrictions(recipe, rule_set.rules, ingredient_db) == []


class TestDeriveDietLabels:
    def test_chicken_recipe_derivation(self, vocab, ingredient_db, rule_set):
        recipe = make_recipe(vocab, "Chicken Fry", ["500 g chicken", "1 onion"])
        derived = derive_diet_labels(recipe, rule_set, ingredient_db, base=BASE)
        iris = {l.iri for l in derived.labels}
        assert cid("dietary_practice", "non-vegetarian").iri in iris
        assert cid("dietary_practice", "vegetarian").iri not in iris
        assert cid("dietary_practice", "jain").iri not in iris

    def test_dairy_free_from_absence(self, vocab, ingredient_db, rule_set):
        recipe = make_recipe(vocab, "Tomato Rice", ["2 cups rice", "2 tomatoes"])
        derived = derive_diet_labels(recipe, rule_set, ingredient_db, base=BASE)
        iris = {l.iri for l in derived.labels}
        assert cid("allergen_label", "dairy-free").iri in iris
        assert not derived.provisional

    def test_dairy_blocks_dairy_free(self, vocab, ingredient_db, rule_set):
        recipe = make_recipe(vocab, "Paneer Rice", ["2 cups rice", "100 g paneer"])
        derived = derive_diet_labels(recipe, rule_set, ingredient_db, base=BASE)
        assert cid("allergen_label", "dairy-free").iri not in {l.iri for l in derived.labels}

    def test_empty_rules_returns_extracted(self, vocab, ingredient_db):
        from kgforge.ontology import RuleSet

        recipe = make_recipe(vocab, "Labeled", ["1 onion"], ["halal"])
        derived = derive_diet_labels(recipe, RuleSet(), ingredient_db, base=BASE)
        assert [l.iri for l in derived.labels] == [cid("dietary_practice", "halal").iri]

    def test_union_never_removes_extracted(self, vocab, ingredient_db, rule_set):
        recipe = make_recipe(vocab, "Odd Label", ["500 g chicken"], ["vegetarian"])
        derived = derive_diet_labels(recipe, rule_set, ingredient_db, base=BASE)
        assert cid("dietary_practice", "vegetarian").iri in {l.iri for l in derived.labels}

    def test_unresolved_marks_provisional(self, vocab, ingredient_db, rule_set):
        recipe = make_recipe(vocab, "Mystery", ["1 cup snozzberry"])
        derived = derive_diet_labels(recipe, rule_set, ingredient_db, base=BASE)
        assert derived.provisional


class TestScaling:
    def test_chettinad_quarter_scale(self, vocab, units):
        # serves 4 with 1 kg chicken; one serving gets exactly 250 g
        recipe = make_recipe(vocab, "Chicken Chettinad", ["1 kg chicken"], serving_size=4)
        dish = scale_recipe(recipe, 1, units)
        q = dish.scaled_ingredients[0].quantity
        assert q.magnitude == Decimal("250")
        assert q.unit.slug == "gram"

    def test_identity_scaling_keeps_quantities(self, vocab, units):
        recipe = make_recipe(
            vocab, "Chicken Chettinad", ["1 kg chicken", "6 pieces cardamom"], serving_size=4
        )
        dish = scale_recipe(recipe, 4, units)
        assert [u.quantity for u in dish.scaled_ingredients] == [
            u.quantity for u in recipe.ingredients
        ]

    def test_bowl_converts_to_grams_then_scales(self, vocab, units):
        # 1 bowl = 250 g, doubled = 500 g
        recipe = make_recipe(vocab, "Dal", ["1 bowl dal"], serving_size=1)
        dish = scale_recipe(recipe, 2, units)
        q = dish.scaled_ingredients[0].quantity
        assert q.magnitude == Decimal("500")
        assert q.unit.slug == "gram"

    def test_approximate_carries_through_unscaled(self, vocab, units):
        recipe = make_recipe(vocab, "Salted", ["a little salt"], serving_size=2)
        dish = scale_recipe(recipe, 6, units)
        scaled = dish.scaled_ingredients[0]
        assert scaled.quantity.approximate is True
        assert scaled.quantity.magnitude == Decimal(1)
        assert scaled.scale_note == "x3"

    def test_nonpositive_servings_rejected(self, vocab, units):
        recipe = make_recipe(vocab, "Anything", ["1 kg chicken"])
        with pytest.raises(ValueError):
            scale_recipe(recipe, 0, units)

    def test_scaling_composes_multiplicatively(self, vocab, units):
        recipe = make_recipe(
            vocab, "Composed", ["1 kg chicken", "3 cups rice", "2 tbsp oil"], serving_size=4
        )
        via_dish = scale_dish(scale_recipe(recipe, 3, units), 7, units)
        direct = scale_recipe(recipe, 7, units)
        for a, b in zip(via_dish.scaled_ingredients, direct.scaled_ingredients):
            assert abs(a.quantity.magnitude - b.quantity.magnitude) <= Decimal("1e-9") * b.quantity.magnitude
            assert a.quantity.unit == b.quantity.unit


class TestNutrition:
    def test_unit_quantity(self, vocab, units, ingredient_db):
        # 100 g of paneer at 18 g protein per 100 g
        recipe = make_recipe(vocab, "Paneer Block", ["100 g paneer"], serving_size=1)
        result = compute_nutrition(recipe, ingredient_db, units)
        protein = result.profile[ConceptId(f"{BASE}/nutrient/protein")]
        assert protein[0] == Decimal("18")
        assert result.missing == []

    def test_two_ingredient_linear_sum(self, vocab, units, ingredient_db):
        # 200 g onion @ 0.1 fat/100g = 0.2; 50 g butter @ 81 fat/100g = 40.5
        recipe = make_recipe(
            vocab, "Onion Butter", ["200 g onion", "50 g butter"], serving_size=2
        )
        result = compute_nutrition(recipe, ingredient_db, units)
        fat = result.profile[ConceptId(f"{BASE}/nutrient/fat")]
        assert fat[0] == Decimal("40.7")
        per_serving = result.per_serving[ConceptId(f"{BASE}/nutrient/fat")]
        assert per_serving[0] == Decimal("20.35")

    def test_unresolvable_quantity_goes_to_missing(self, vocab, units, ingredient_db):
        recipe = make_recipe(
            vocab, "Salted Paneer", ["100 g paneer", "a little salt"], serving_size=1
        )
        result = compute_nutrition(recipe, ingredient_db, units)
        assert result.missing == ["a little salt"]
        assert ConceptId(f"{BASE}/nutrient/protein") in result.profile

    def test_doubling_is_exactly_linear(self, vocab, units, ingredient_db):
        lines = ["100 g paneer", "2 cups rice", "50 g butter"]
        doubled = ["200 g paneer", "4 cups rice", "100 g butter"]
        r1 = compute_nutrition(make_recipe(vocab, "A", lines, serving_size=1), ingredient_db, units)
        r2 = compute_nutrition(make_recipe(vocab, "B", doubled, serving_size=1), ingredient_db, units)
        for nutrient, (amount, _) in r1.profile.items():
            assert r2.profile[nutrient][0] == amount * 2


class TestQuantityParsing:
    @pytest.mark.parametrize("line,magnitude,unit_slug,surface", [
        ("1 kg chicken", "1", "kilogram", "chicken"),
        ("6 pieces cardamom", "6", "piece", "cardamom"),
        ("2 onions", "2", "piece", "onions"),
        ("2 tbsp pudina chutney", "2", "tablespoon", "pudina chutney"),
        ("1 bowl dal", "1", "bowl", "dal"),
        ("1.5 cups basmati rice", "1.5", "cup", "basmati rice"),
    ])
    def test_plain_lines(self, vocab, line, magnitude, unit_slug, surface):
        q, s = parse_ingredient_line(line, vocab)
        assert q.magnitude == Decimal(magnitude)
        assert q.unit.slug == unit_slug
        assert s == surface
        assert q.approximate is False

    def test_unicode_fraction(self, vocab):
        q, s = parse_ingredient_line("½ tsp turmeric", vocab)
        assert q.magnitude == Decimal("0.5")
        assert q.unit.slug == "teaspoon"
        assert s == "turmeric"

    def test_range_takes_midpoint_approximate(self, vocab):
        q, s = parse_ingredient_line("2-3 green chilies", vocab)
        assert q.magnitude == Decimal("2.5")
        assert q.approximate is True
        assert s == "green chilies"

    def test_linguistic_tokens(self, vocab):
        q, s = parse_ingredient_line("a handful of coriander leaves", vocab)
        assert q.approximate is True
        assert s == "coriander leaves"
        q, s = parse_ingredient_line("salt to taste", vocab)
        assert q.approximate is True and s == "salt"

    def test_mixed_number(self, vocab):
        q, s = parse_ingredient_line("1 1/2 cups rice", vocab)
        assert q.magnitude == Decimal("1.5")
        assert s == "rice"
