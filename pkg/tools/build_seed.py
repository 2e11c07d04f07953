#!/usr/bin/env python3
"""Regenerate the packaged seed data (vocabulary.ttl, ingredients.json,
rules.yaml, property_map.yaml) from the tables below.

Run from the repo root: python tools/build_seed.py
"""

from __future__ import annotations

import json
from decimal import Decimal
from pathlib import Path

from kgforge.ontology import (
    ConceptId,
    DEFAULT_BASE_IRI,
    Scheme,
    UnitKind,
    VocabularyStore,
    VocabularyTerm,
)

SEED_DIR = Path(__file__).resolve().parent.parent / "src" / "kgforge" / "seed"

# (pref label, [alt labels], broader pref label or None)
CUISINES = [
    ("Indian", [], None),
    ("North Indian", [], "Indian"),
    ("South Indian", [], "Indian"),
    ("East Indian", [], "Indian"),
    ("West Indian", [], "Indian"),
    ("Awadhi", [("Lucknowi", "en")], "North Indian"),
    ("Punjabi", [], "North Indian"),
    ("Mughlai", [], "North Indian"),
    ("Karnataka", [], "South Indian"),
    ("Chettinad", [], "South Indian"),
    ("Andhra", [], "South Indian"),
    ("Tamil", [], "South Indian"),
    ("Hyderabadi", [], "South Indian"),
    ("Bengali", [], "East Indian"),
    ("Gujarati", [], "West Indian"),
    ("Maharashtrian", [], "West Indian"),
]

DIETARY_PRACTICES = [
    "Vegetarian", "Non-vegetarian", "Vegan", "Jain", "Lacto-vegetarian",
    "Ovo-vegetarian", "Lacto-ovo-vegetarian", "Eggetarian", "Pescatarian",
    "Halal", "Kosher", "Sattvic", "Swaminarayan", "Buddhist-vegetarian",
]

ALLERGEN_LABELS = [
    "Dairy-free", "Egg-free", "Gluten-free", "Wheat-free", "Nut-free",
    "Tree-nut-free", "Peanut-free", "Soy-free", "Sesame-free", "Mustard-free",
    "Fish-free", "Shellfish-free", "Crustacean-free", "Mollusc-free",
    "Celery-free", "Lupin-free", "Sulphite-free", "Corn-free",
    "Coconut-free", "Nightshade-free", "Allium-free",
]

HEALTH_LABELS = [
    "Keto-friendly", "Low-carb", "High-protein", "Low-fat", "Low-sodium",
    "Low-sugar", "Sugar-free", "Diabetic-friendly", "Heart-healthy",
    "High-fiber", "Low-calorie", "Low-cholesterol", "Low-glycemic",
    "Paleo-friendly", "Iron-rich", "Calcium-rich", "Probiotic",
    "Anti-inflammatory", "Weight-management", "Kid-friendly",
    "Immunity-boosting", "Energy-boosting",
]

INGREDIENT_CATEGORIES = [
    ("vegetable", [], None),
    ("root_vegetable", [], "vegetable"),
    ("bulb_vegetable", [("bulb or stem vegetable", "en")], "vegetable"),
    ("leafy_vegetable", [], "vegetable"),
    ("fruit_vegetable", [], "vegetable"),
    ("meat", [], None),
    ("poultry", [], "meat"),
    ("red_meat", [], "meat"),
    ("egg", [], None),
    ("dairy", [], None),
    ("seafood", [], None),
    ("legume", [], None),
    ("milled_cereal_product", [], None),
    ("whole_grain", [], None),
    ("gluten_grain", [], None),
    ("spice", [], None),
    ("herb", [], None),
    ("nut", [], None),
    ("tree_nut", [], "nut"),
    ("seed", [], None),
    ("oil_fat", [], None),
    ("sweetener", [], None),
    ("salt_mineral", [], None),
    ("fruit", [], None),
]

COOKING_TECHNIQUES = [
    ("dum cooking", [("dum-cook", "en"), ("dum", "hi")]),
    ("sauteing", [("saute", "en")]),
    ("deep frying", [("deep-fry", "en")]),
    ("shallow frying", [("shallow-fry", "en")]),
    ("pressure cooking", [("pressure-cook", "en")]),
    ("tempering", [("tadka", "hi"), ("chhaunk", "hi")]),
    ("roasting", [("roast", "en")]),
    ("steaming", [("steam", "en")]),
    ("simmering", [("simmer", "en")]),
    ("grilling", [("grill", "en")]),
    ("kneading", [("knead", "en")]),
    ("marinating", [("marinate", "en")]),
    ("boiling", [("boil", "en")]),
    ("grinding", [("grind", "en")]),
    ("fermenting", [("ferment", "en")]),
]

COOKWARE = [
    ("kadai", [("kadahi", "hi"), ("karahi", "hi"), ("wok", "en")]),
    ("handi", []),
    ("tawa", [("tava", "hi"), ("griddle", "en")]),
    ("pressure cooker", []),
    ("mixer grinder", [("mixie", "en")]),
    ("idli steamer", []),
    ("pot", []),
    ("pan", [("skillet", "en")]),
]

MEALTIMES = [
    ("breakfast", []),
    ("lunch", []),
    ("dinner", []),
    ("snack time", []),
    ("brunch", []),
    ("iftaar", [("iftar", "en")]),
    ("navratri special", [("navaratri special", "en")]),
    ("festival meal", []),
]

RECIPE_CATEGORIES = [
    ("flatbread", []),
    ("dessert", []),
    ("beverage", [("drink", "en")]),
    ("curry", []),
    ("bharta", []),
    ("rice dish", []),
    ("snack", []),
    ("soup", []),
    ("sandwich", []),
    ("salad", []),
    ("breakfast", []),
    ("condiment", []),
    ("street food", []),
]

# canonical recipe-name concepts (homonyms, pairing targets, known dishes)
RECIPES = [
    ("steamed rice", [("chawal", "hi")]),
    ("pudina chutney", [("mint chutney", "en")]),
    ("dal", [("daal", "hi"), ("lentil soup", "en")]),
    ("raita", []),
    ("sambar", []),
    ("salan", []),
    ("papadum", [("papad", "hi")]),
    ("coconut chutney", []),
]

# (pref, alts, kind, grams_equivalent)
UNITS = [
    ("gram", [("g", "en"), ("gm", "en"), ("gms", "en"), ("grams", "en")], UnitKind.MASS, "1"),
    ("kilogram", [("kg", "en"), ("kilo", "en")], UnitKind.MASS, "1000"),
    ("milligram", [("mg", "en")], UnitKind.MASS, "0.001"),
    ("milliliter", [("ml", "en")], UnitKind.VOLUME, "1"),
    ("liter", [("l", "en"), ("litre", "en")], UnitKind.VOLUME, "1000"),
    ("teaspoon", [("tsp", "en")], UnitKind.VOLUME, "5"),
    ("tablespoon", [("tbsp", "en")], UnitKind.VOLUME, "15"),
    ("cup", [("cups", "en")], UnitKind.VOLUME, "240"),
    ("bowl", [("katori", "hi")], UnitKind.VESSEL, "250"),
    ("glass", [], UnitKind.VESSEL, "200"),
    ("plate", [], UnitKind.VESSEL, "300"),
    ("piece", [("pieces", "en"), ("pcs", "en"), ("pc", "en")], UnitKind.COUNT, None),
    ("slice", [("slices", "en")], UnitKind.COUNT, None),
    ("clove", [("cloves", "en")], UnitKind.COUNT, None),
    ("sprig", [("sprigs", "en")], UnitKind.COUNT, None),
    ("pinch", [("pinches", "en")], UnitKind.LINGUISTIC, None),
    ("handful", [], UnitKind.LINGUISTIC, None),
]

# name, alts, origin, categories, nutrition per 100 g, extras
INGREDIENTS = [
    ("turmeric", [("haldi", "hi"), ("holud", "bn"), ("halad", "mr"), ("pasupu", "te"),
                  ("manjal", "ta"), ("हल्दी", "hi")], "plant", ["spice", "root_vegetable"],
     {"protein": 8, "fat": 3.2, "carbohydrate": 67, "fiber": 22.7}, {"flavor": "earthy, bitter"}),
    ("raw rice", [("chawal", "hi"), ("rice", "en"), ("chaval", "hi")], "plant",
     ["whole_grain"], {"protein": 7, "fat": 0.6, "carbohydrate": 78, "fiber": 1.3},
     {"glycemic_index": 73}),
    ("basmati rice", [("basmati", "en")], "plant", ["whole_grain"],
     {"protein": 7.5, "fat": 0.6, "carbohydrate": 77, "fiber": 1}, {}),
    ("chicken", [("murgh", "hi")], "animal", ["meat", "poultry"],
     {"protein": 20, "fat": 8, "carbohydrate": 0}, {"ph": 6.1}),
    ("mutton", [("goat meat", "en")], "animal", ["meat", "red_meat"],
     {"protein": 25, "fat": 9, "carbohydrate": 0}, {}),
    ("egg", [("anda", "hi"), ("eggs", "en")], "animal", ["egg"],
     {"protein": 13, "fat": 11, "carbohydrate": 1.1}, {}),
    ("fish", [("machli", "hi")], "animal", ["meat", "seafood"],
     {"protein": 22, "fat": 4, "carbohydrate": 0}, {}),
    ("paneer", [("cottage cheese", "en")], "animal", ["dairy"],
     {"protein": 18, "fat": 22, "carbohydrate": 3}, {}),
    ("milk", [("doodh", "hi")], "animal", ["dairy"],
     {"protein": 3.4, "fat": 4, "carbohydrate": 5}, {"ph": 6.7}),
    ("yogurt", [("curd", "en"), ("dahi", "hi")], "animal", ["dairy"],
     {"protein": 3.5, "fat": 4.3, "carbohydrate": 4.7}, {"ph": 4.4}),
    ("butter", [("makkhan", "hi")], "animal", ["dairy", "oil_fat"],
     {"protein": 0.9, "fat": 81, "carbohydrate": 0.1}, {}),
    ("ghee", [("clarified butter", "en")], "animal", ["dairy", "oil_fat"],
     {"protein": 0, "fat": 99.5, "carbohydrate": 0}, {"substitutes": ["butter"]}),
    ("onion", [("pyaaz", "hi")], "plant", ["bulb_vegetable"],
     {"protein": 1.1, "fat": 0.1, "carbohydrate": 9.3, "fiber": 1.7}, {}),
    ("garlic", [("lahsun", "hi")], "plant", ["bulb_vegetable"],
     {"protein": 6.4, "fat": 0.5, "carbohydrate": 33, "fiber": 2.1}, {}),
    ("ginger", [("adrak", "hi")], "plant", ["root_vegetable", "spice"],
     {"protein": 1.8, "fat": 0.8, "carbohydrate": 18, "fiber": 2}, {}),
    ("tomato", [("tamatar", "hi"), ("tomatoes", "en")], "plant", ["fruit_vegetable"],
     {"protein": 0.9, "fat": 0.2, "carbohydrate": 3.9, "fiber": 1.2}, {"ph": 4.5}),
    ("potato", [("aloo", "hi"), ("batata", "mr"), ("potatoes", "en")], "plant", ["root_vegetable"],
     {"protein": 2, "fat": 0.1, "carbohydrate": 17, "fiber": 2.2}, {"glycemic_index": 78}),
    ("spinach", [("palak", "hi")], "plant", ["leafy_vegetable"],
     {"protein": 2.9, "fat": 0.4, "carbohydrate": 3.6, "fiber": 2.2}, {}),
    ("eggplant", [("baingan", "hi"), ("brinjal", "en"), ("aubergine", "en")], "plant",
     ["fruit_vegetable"], {"protein": 1, "fat": 0.2, "carbohydrate": 5.9, "fiber": 3}, {}),
    ("okra", [("bhindi", "hi"), ("ladies finger", "en")], "plant", ["fruit_vegetable"],
     {"protein": 1.9, "fat": 0.2, "carbohydrate": 7.5, "fiber": 3.2}, {}),
    ("cauliflower", [("gobi", "hi")], "plant", ["vegetable"],
     {"protein": 1.9, "fat": 0.3, "carbohydrate": 5, "fiber": 2}, {}),
    ("green chili", [("hari mirch", "hi"), ("green chilli", "en"), ("green chilies", "en"),
                     ("green chillies", "en")], "plant", ["fruit_vegetable", "spice"],
     {"protein": 2, "fat": 0.2, "carbohydrate": 9.5, "fiber": 1.5}, {}),
    ("red lentils", [("masoor dal", "hi"), ("masoor", "hi")], "plant", ["legume"],
     {"protein": 24, "fat": 1.1, "carbohydrate": 60, "fiber": 10.7}, {"glycemic_index": 32}),
    ("pigeon peas", [("toor dal", "hi"), ("arhar dal", "hi")], "plant", ["legume"],
     {"protein": 22, "fat": 1.5, "carbohydrate": 63, "fiber": 15}, {}),
    ("lentils", [("dal", "hi"), ("daal", "hi")], "plant", ["legume"],
     {"protein": 24, "fat": 1, "carbohydrate": 60, "fiber": 11}, {}),
    ("chickpeas", [("chana", "hi"), ("chole", "hi"), ("garbanzo", "en")], "plant", ["legume"],
     {"protein": 19, "fat": 6, "carbohydrate": 61, "fiber": 17}, {"glycemic_index": 28}),
    ("chickpea flour", [("besan", "hi"), ("gram flour", "en")], "plant",
     ["legume", "milled_cereal_product"],
     {"protein": 22, "fat": 6.7, "carbohydrate": 58, "fiber": 10.8}, {}),
    ("wheat flour", [("atta", "hi"), ("whole wheat flour", "en")], "plant",
     ["milled_cereal_product", "gluten_grain"],
     {"protein": 13, "fat": 2.5, "carbohydrate": 72, "fiber": 10.7}, {}),
    ("semolina", [("sooji", "hi"), ("rava", "hi")], "plant",
     ["milled_cereal_product", "gluten_grain"],
     {"protein": 12.7, "fat": 1.1, "carbohydrate": 73, "fiber": 3.9}, {}),
    ("cumin", [("jeera", "hi"), ("cumin seeds", "en")], "plant", ["spice", "seed"],
     {"protein": 18, "fat": 22, "carbohydrate": 44, "fiber": 10.5}, {}),
    ("coriander", [("dhania", "hi"), ("cilantro", "en"), ("coriander leaves", "en")],
     "plant", ["herb", "spice"],
     {"protein": 2.1, "fat": 0.5, "carbohydrate": 3.7, "fiber": 2.8}, {}),
    ("cardamom", [("elaichi", "hi"), ("cardamoms", "en")], "plant", ["spice"],
     {"protein": 11, "fat": 6.7, "carbohydrate": 68, "fiber": 28}, {}),
    ("clove", [("laung", "hi")], "plant", ["spice"],
     {"protein": 6, "fat": 13, "carbohydrate": 66, "fiber": 33.9}, {}),
    ("cinnamon", [("dalchini", "hi")], "plant", ["spice"],
     {"protein": 4, "fat": 1.2, "carbohydrate": 81, "fiber": 53.1}, {}),
    ("black pepper", [("kali mirch", "hi"), ("pepper", "en")], "plant", ["spice"],
     {"protein": 10.4, "fat": 3.3, "carbohydrate": 64, "fiber": 25.3}, {}),
    ("mustard seeds", [("rai", "hi"), ("sarson", "hi")], "plant", ["spice", "seed"],
     {"protein": 26, "fat": 36, "carbohydrate": 28, "fiber": 12.2}, {}),
    ("fenugreek", [("methi", "hi")], "plant", ["herb", "spice"],
     {"protein": 23, "fat": 6.4, "carbohydrate": 58, "fiber": 24.6}, {}),
    ("curry leaves", [("kadi patta", "hi")], "plant", ["herb"],
     {"protein": 6.1, "fat": 1, "carbohydrate": 18.7, "fiber": 6.4}, {}),
    ("garam masala", [], "plant", ["spice"],
     {"protein": 14, "fat": 15, "carbohydrate": 45, "fiber": 24}, {}),
    ("red chili powder", [("lal mirch", "hi"), ("chili powder", "en")], "plant", ["spice"],
     {"protein": 13.5, "fat": 14, "carbohydrate": 50, "fiber": 34.8}, {}),
    ("salt", [("namak", "hi")], "chemical", ["salt_mineral"], {}, {}),
    ("iodized salt", [], "chemical", ["salt_mineral"], {},
     {"substitutes": ["himalayan pink salt"]}),
    ("himalayan pink salt", [("pink salt", "en")], "chemical", ["salt_mineral"], {}, {}),
    ("sugar", [("cheeni", "hi")], "plant", ["sweetener"],
     {"protein": 0, "fat": 0, "carbohydrate": 100}, {"glycemic_index": 65}),
    ("jaggery", [("gur", "hi")], "plant", ["sweetener"],
     {"protein": 0.4, "fat": 0.1, "carbohydrate": 98}, {}),
    ("coconut", [("nariyal", "hi"), ("grated coconut", "en")], "plant", ["fruit", "nut"],
     {"protein": 3.3, "fat": 33, "carbohydrate": 15, "fiber": 9}, {}),
    ("cashew", [("kaju", "hi"), ("cashews", "en"), ("cashew nuts", "en")], "plant",
     ["nut", "tree_nut"], {"protein": 18, "fat": 44, "carbohydrate": 30, "fiber": 3.3}, {}),
    ("almond", [("badam", "hi"), ("almonds", "en")], "plant", ["nut", "tree_nut"],
     {"protein": 21, "fat": 50, "carbohydrate": 22, "fiber": 12.5}, {}),
    ("lemon", [("nimbu", "hi"), ("lime", "en"), ("lemon juice", "en")], "plant", ["fruit"],
     {"protein": 1.1, "fat": 0.3, "carbohydrate": 9.3, "fiber": 2.8}, {"ph": 2.2}),
    ("tamarind", [("imli", "hi")], "plant", ["fruit"],
     {"protein": 2.8, "fat": 0.6, "carbohydrate": 63, "fiber": 5.1}, {"ph": 3.0}),
    ("vegetable oil", [("oil", "en"), ("cooking oil", "en")], "plant", ["oil_fat"],
     {"protein": 0, "fat": 100, "carbohydrate": 0}, {}),
    ("mustard oil", [("sarson ka tel", "hi")], "plant", ["oil_fat"],
     {"protein": 0, "fat": 100, "carbohydrate": 0}, {}),
    ("tea leaves", [("chai patti", "hi"), ("black tea", "en")], "plant", ["herb"],
     {}, {}),
    ("asafoetida", [("hing", "hi")], "plant", ["spice"], {}, {}),
    ("bay leaf", [("tej patta", "hi"), ("bay leaves", "en")], "plant", ["herb", "spice"],
     {}, {}),
    ("peas", [("matar", "hi"), ("green peas", "en")], "plant", ["legume", "vegetable"],
     {"protein": 5.4, "fat": 0.4, "carbohydrate": 14.5, "fiber": 5.7}, {}),
    ("carrot", [("gajar", "hi"), ("carrots", "en")], "plant", ["root_vegetable"],
     {"protein": 0.9, "fat": 0.2, "carbohydrate": 9.6, "fiber": 2.8}, {}),
    ("cucumber", [("kheera", "hi"), ("kakdi", "mr")], "plant", ["fruit_vegetable"],
     {"protein": 0.7, "fat": 0.1, "carbohydrate": 3.6, "fiber": 0.5}, {"ph": 5.2}),
    ("bread", [("bread slices", "en"), ("white bread", "en")], "plant",
     ["milled_cereal_product", "gluten_grain"],
     {"protein": 9, "fat": 3.2, "carbohydrate": 49, "fiber": 2.7}, {}),
    ("saffron", [("kesar", "hi"), ("zafran", "ur")], "plant", ["spice"], {}, {}),
    ("curry powder", [], "plant", ["spice"], {}, {}),
]

# canonical recipe concepts an ingredient is the product of
DERIVED_FROM = {}


def build_store() -> VocabularyStore:
    store = VocabularyStore()
    by_label: dict[tuple[Scheme, str], ConceptId] = {}

    def add(scheme: Scheme, pref: str, alts=None, broader: str | None = None,
            language: str = "en", **extra) -> None:
        term = VocabularyTerm.create(
            scheme, pref, language=language,
            alt_labels=[(a, l) for a, l in (alts or [])],
            broader=by_label.get((scheme, broader)) if broader else None,
            **extra,
        )
        store.upsert_term(term)
        by_label[(scheme, pref)] = term.id

    for pref, alts, broader in CUISINES:
        add(Scheme.CUISINE, pref, alts, broader)
    for pref in DIETARY_PRACTICES:
        add(Scheme.DIETARY_PRACTICE, pref)
    for pref in ALLERGEN_LABELS:
        add(Scheme.ALLERGEN_LABEL, pref)
    for pref in HEALTH_LABELS:
        add(Scheme.HEALTH_LABEL, pref)
    for pref, alts, broader in INGREDIENT_CATEGORIES:
        add(Scheme.INGREDIENT_CATEGORY, pref, alts, broader)
    for pref, alts in COOKING_TECHNIQUES:
        add(Scheme.COOKING_TECHNIQUE, pref, alts)
    for pref, alts in COOKWARE:
        add(Scheme.COOKWARE, pref, alts)
    for pref, alts in MEALTIMES:
        add(Scheme.MEALTIME, pref, alts)
    for pref, alts in RECIPE_CATEGORIES:
        add(Scheme.RECIPE_CATEGORY, pref, alts)
    for pref, alts in RECIPES:
        add(Scheme.RECIPE, pref, alts)
    for pref, alts, kind, grams in UNITS:
        add(Scheme.UNIT, pref, alts, notation=pref,
            unit_kind=kind,
            grams_equivalent=Decimal(grams) if grams else None)
    for name, alts, _origin, _cats, _nutr, _extra in INGREDIENTS:
        add(Scheme.INGREDIENT, name, alts)
    return store


def build_ingredients_json() -> dict:
    rows = []
    for name, alts, origin, cats, nutrition, extra in INGREDIENTS:
        row = {
            "name": name,
            "names": [{"text": name, "language": "en"}]
                     + [{"text": a, "language": l} for a, l in alts],
            "origin": origin,
            "categories": cats,
        }
        if nutrition:
            row["nutrition_per_100g"] = nutrition
        for key in ("flavor", "glycemic_index", "ph", "substitutes"):
            if key in extra:
                row[key] = extra[key]
        if name in DERIVED_FROM:
            row["derived_from_recipe"] = DERIVED_FROM[name]
        rows.append(row)
    return {"ingredients": rows}


RULES_YAML = """\
# Restriction rules and allergen-absence tables.
#
# rules[]:
#   id       - short stable identifier, referenced by violations and flags
#   trigger  - <scheme>/<slug> of the label that activates the rule
#   mode     - exists | not_exists (quantifier over the recipe's ingredients)
#   pattern  - boolean expression over origin:<name> / category:<name> atoms
#              with &, |, ! and parentheses
#   message  - shown on violations
#
# allergen_absence: allergen label slug -> ingredient category slugs; the
# label is derived when no ingredient carries any of the categories.
version: 1
rules:
  - id: R1
    trigger: dietary_practice/non-vegetarian
    mode: exists
    pattern: "origin:animal & (category:meat | category:egg)"
    message: "Non-vegetarian recipes must contain at least one meat or egg ingredient"
  - id: R2
    trigger: dietary_practice/vegetarian
    mode: not_exists
    pattern: "origin:animal & (category:meat | category:egg)"
    message: "Vegetarian recipes must not contain meat or egg ingredients"
  - id: R3
    trigger: dietary_practice/jain
    mode: not_exists
    pattern: "(category:meat & origin:animal) | (category:root_vegetable & origin:plant) | category:bulb_vegetable"
    message: "Jain recipes must not contain meat, root vegetables, or bulb vegetables"
allergen_absence:
  dairy-free: [dairy]
  egg-free: [egg]
  gluten-free: [gluten_grain]
  nut-free: [nut, tree_nut]
"""

PROPERTY_MAP_YAML = """\
# Semantic property-name resolution.
#
# aliases: raw source property -> canonical ontology property. Raw names not
#   listed here and not already canonical stay unmapped (counted for curation).
# domains: optional per-source-domain overrides, consulted first.
# properties: canonical property -> controlling vocabulary schemes (for
#   soundness scoring) and whether the property is multi-valued.
aliases:
  region: cuisine
  style: cuisine
  course: category
  type: category
  servings: serving_size
  serves: serving_size
  yield: serving_size
  kcal: calories
  energy: calories
  keywords: diet_label
  diet: diet_label
  has_ingredient_raw: has_ingredient
  published: blogpost_timestamp
  publish_date: blogpost_timestamp
domains: {}
properties:
  name: {schemes: [], multi: false}
  category: {schemes: [recipe_category], multi: false}
  cuisine: {schemes: [cuisine], multi: false}
  serving_size: {schemes: [], multi: false}
  calories: {schemes: [], multi: false}
  instructions: {schemes: [], multi: false}
  has_ingredient: {schemes: [ingredient], multi: true}
  has_cooking_char: {schemes: [cooking_technique, cookware], multi: true}
  diet_label: {schemes: [dietary_practice, allergen_label, health_label], multi: true}
  pairing: {schemes: [recipe], multi: true}
  texture: {schemes: [], multi: false}
  flavor: {schemes: [], multi: false}
  blogpost_timestamp: {schemes: [], multi: false}
"""

SITE_PROFILES_YAML = """\
# Declarative recipe-card selector profiles, one per source domain.
#
# card: selector of the recipe-card region (its absence makes a page
#   LLM-only). Field keys are RAW source property names; semantic
#   resolution maps them to canonical ontology properties later.
# Field spec: {selector, attr?, all?, scope?: card|document}.
domains:
  masalajournal.example:
    card: "div.recipe-card"
    fields:
      name: {selector: "h1.recipe-title", scope: document}
      category: {selector: "span.recipe-category"}
      cuisine: {selector: "span.recipe-cuisine"}
      servings: {selector: "span.recipe-servings"}
      diet: {selector: "span.recipe-diet", all: true}
      pairing: {selector: "span.recipe-pairing", all: true}
      published: {selector: "meta[name=publish-date]", attr: content, scope: document}
    ingredients: {selector: "ul.recipe-ingredients li"}
    instructions: {selector: "div.recipe-instructions"}
    nutrition: {selector: "table.recipe-nutrition tr"}
  spicetrail.example:
    card: "section.card-box"
    fields:
      name: {selector: "h2.card-title"}
      type: {selector: "span.card-type"}
      region: {selector: "span.card-region"}
      serves: {selector: "span.card-serves"}
      diet: {selector: "span.card-diet", all: true}
      published: {selector: "meta[name=post-date]", attr: content, scope: document}
    ingredients: {selector: "div.card-ingredients li"}
    instructions: {selector: "div.card-method"}
    nutrition: {selector: "div.card-nutrition tr"}
  homeplates.example:
    card: "div.hrecipe"
    fields:
      name: {selector: "span.fn"}
      course: {selector: "span.course"}
      style: {selector: "span.style"}
      yield: {selector: "span.yield"}
      diet: {selector: "span.diet", all: true}
      published: {selector: "meta[name=publish-date]", attr: content, scope: document}
    ingredients: {selector: "ul.ingredients li"}
    instructions: {selector: "div.preparation"}
"""

ZERO_SHOT_YAML = """\
name: zero-shot-v1
mode: zero_shot
target_schema: [name, cuisine, serving_size, has_ingredient, has_cooking_char, diet_label]
template: |
  Extract the recipe fields ({schema}) from the page text below.
  Respond as JSON with exactly these keys; omit keys you cannot fill.
  List each ingredient as a single entity name without amounts.

  PAGE:
  {page_text}
"""

FEW_SHOT_YAML = """\
name: few-shot-v1
mode: few_shot
target_schema: [name, cuisine, serving_size, has_ingredient, has_cooking_char, diet_label]
exemplars:
  - text: "For the spread you need pudina chutney and a little butter."
    entities:
      - {surface: pudina chutney, scheme: recipe}
      - {surface: butter, scheme: ingredient}
  - text: "Marinate with ginger garlic paste before you grill."
    entities:
      - {surface: ginger garlic paste, scheme: ingredient}
template: |
  Extract the recipe fields ({schema}) from the page text below.
  Keep multi-word food names intact, as in these examples: {exemplars}
  Do not list cookware or techniques as ingredients.

  PAGE:
  {page_text}
"""


def main() -> None:
    SEED_DIR.mkdir(parents=True, exist_ok=True)
    (SEED_DIR / "prompts").mkdir(exist_ok=True)
    store = build_store()
    store.save(SEED_DIR / "vocabulary.ttl")
    (SEED_DIR / "ingredients.json").write_text(
        json.dumps(build_ingredients_json(), indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    (SEED_DIR / "rules.yaml").write_text(RULES_YAML, encoding="utf-8")
    (SEED_DIR / "property_map.yaml").write_text(PROPERTY_MAP_YAML, encoding="utf-8")
    (SEED_DIR / "site_profiles.yaml").write_text(SITE_PROFILES_YAML, encoding="utf-8")
    (SEED_DIR / "prompts" / "zero_shot.yaml").write_text(ZERO_SHOT_YAML, encoding="utf-8")
    (SEED_DIR / "prompts" / "few_shot.yaml").write_text(FEW_SHOT_YAML, encoding="utf-8")
    counts = store.counts_by_scheme()
    for scheme in Scheme:
        print(f"{scheme.value:22s} {counts.get(scheme, 0)}")


if __name__ == "__main__":
    main()
