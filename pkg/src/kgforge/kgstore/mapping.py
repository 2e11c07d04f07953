"""Entity-to-triples conversion.

Every has_ingredient edge carries its measured quantity as a reified
qualifier (the labeled-relation encoding); qualifier nodes get
deterministic IRIs so graphs stay blank-node-free.
"""

from __future__ import annotations

from decimal import Decimal

from ..ontology.concepts import ConceptId, VocabularyTerm
from ..ontology.models import Dish, Ingredient, Meal, Platter, Quantity, Recipe
from .graph import class_iri, prop_iri
from .triples import Literal, Qualifier, RDF_TYPE, Triple, TripleSet


class MappingError(ValueError):
    pass


def _require_concept(value, context: str) -> str:
    if isinstance(value, ConceptId):
        return value.iri
    raise MappingError(f"unresolved concept reference in {context}: {value!r}")


def _quantity_properties(base: str, q: Quantity) -> tuple:
    props: list[tuple] = [(prop_iri(base, "quantity_magnitude"), Literal.decimal(q.magnitude))]
    if isinstance(q.unit, ConceptId):
        props.append((prop_iri(base, "quantity_unit"), q.unit.iri))
    elif q.unit:
        props.append((prop_iri(base, "quantity_unit"), Literal(str(q.unit))))
    if q.approximate:
        props.append((prop_iri(base, "quantity_approximate"), Literal.boolean(True)))
    return tuple(props)


def recipe_to_triples(recipe: Recipe, base: str) -> TripleSet:
    s = recipe.id.iri
    triples: list[Triple] = [Triple(s, RDF_TYPE, class_iri(base, "Recipe"))]
    qualifiers: list[Qualifier] = []

    triples.append(Triple(s, prop_iri(base, "name"), Literal(recipe.name, language="en")))
    for alias in recipe.aliases:
        triples.append(Triple(s, prop_iri(base, "alias"),
                              Literal(alias.text, language=alias.language)))
    triples.append(Triple(s, prop_iri(base, "serving_size"),
                          Literal.integer(recipe.serving_size)))
    if recipe.calories is not None:
        triples.append(Triple(s, prop_iri(base, "calories"), Literal.decimal(recipe.calories)))
    if recipe.instructions:
        triples.append(Triple(s, prop_iri(base, "instructions"), Literal(recipe.instructions)))
    if recipe.subclass is not None:
        triples.append(Triple(s, prop_iri(base, "is_a"),
                              _require_concept(recipe.subclass, f"{recipe.name} subclass")))
    if recipe.cuisine is not None:
        triples.append(Triple(s, prop_iri(base, "cuisine"),
                              _require_concept(recipe.cuisine, f"{recipe.name} cuisine")))
    if recipe.texture:
        triples.append(Triple(s, prop_iri(base, "texture"), Literal(recipe.texture)))
    if recipe.flavor:
        triples.append(Triple(s, prop_iri(base, "flavor"), Literal(recipe.flavor)))
    if recipe.provenance:
        triples.append(Triple(s, prop_iri(base, "provenance"), Literal(recipe.provenance)))

    for label in recipe.diet_labels:
        triples.append(Triple(s, prop_iri(base, "diet_label"),
                              _require_concept(label, f"{recipe.name} diet label")))
    for pairing in recipe.pairing:
        if isinstance(pairing, ConceptId):
            triples.append(Triple(s, prop_iri(base, "paired_with"), pairing.iri))
        else:
            triples.append(Triple(s, prop_iri(base, "paired_with"), Literal(pairing)))

    chars = recipe.characteristics
    for concept in chars.techniques + chars.cookware:
        triples.append(Triple(s, prop_iri(base, "has_cooking_char"),
                              _require_concept(concept, f"{recipe.name} cooking characteristic")))
    if chars.temperature:
        triples.append(Triple(s, prop_iri(base, "cooking_temperature"),
                              Literal(chars.temperature)))

    for usage in recipe.ingredients:
        obj = _require_concept(usage.ingredient, f"{recipe.name} ingredient {usage.raw_surface!r}")
        edge = Triple(s, prop_iri(base, "has_ingredient"), obj)
        triples.append(edge)
        qualifiers.append(Qualifier(target=edge,
                                    properties=_quantity_properties(base, usage.quantity)))

    if recipe.nutrition:
        for nutrient, (amount, _unit) in sorted(recipe.nutrition.items()):
            slug = nutrient.slug
            triples.append(Triple(s, f"{base.rstrip('/')}/prop/nutrition/{slug}",
                                  Literal.decimal(amount)))
    return TripleSet(triples=triples, qualifiers=qualifiers)


def ingredient_to_triples(ingredient: Ingredient, base: str) -> TripleSet:
    s = ingredient.id.iri
    triples: list[Triple] = [Triple(s, RDF_TYPE, class_iri(base, "Ingredient"))]
    for name in ingredient.names:
        triples.append(Triple(s, prop_iri(base, "name"),
                              Literal(name.text, language=name.language)))
    triples.append(Triple(s, prop_iri(base, "origin"), Literal(ingredient.origin.value)))
    for category in ingredient.categories:
        triples.append(Triple(s, prop_iri(base, "ingredient_category"), category.iri))
    if ingredient.flavor:
        triples.append(Triple(s, prop_iri(base, "flavor"), Literal(ingredient.flavor)))
    if ingredient.glycemic_index is not None:
        triples.append(Triple(s, prop_iri(base, "glycemic_index"),
                              Literal.decimal(ingredient.glycemic_index)))
    if ingredient.ph is not None:
        triples.append(Triple(s, prop_iri(base, "ph"), Literal.decimal(ingredient.ph)))
    for substitute in ingredient.substitutes:
        triples.append(Triple(s, prop_iri(base, "ingr_is_substitute_for"), substitute.iri))
    if ingredient.derived_from_recipe is not None:
        triples.append(Triple(s, prop_iri(base, "derived_from_recipe"),
                              ingredient.derived_from_recipe.iri))
    if ingredient.nutrition_per_100g:
        for nutrient, (amount, _unit) in sorted(ingredient.nutrition_per_100g.items()):
            triples.append(Triple(
                s, f"{base.rstrip('/')}/prop/nutrition_per_100g/{nutrient.slug}",
                Literal.decimal(amount),
            ))
    return TripleSet(triples=triples)


def dish_to_triples(dish: Dish, base: str, dish_id: str | None = None) -> TripleSet:
    s = dish_id or f"{base.rstrip('/')}/dish/{dish.recipe.slug}-x{dish.servings}"
    triples = [
        Triple(s, RDF_TYPE, class_iri(base, "Dish")),
        Triple(s, prop_iri(base, "has_recipe"), dish.recipe.iri),
        Triple(s, prop_iri(base, "servings"), Literal.decimal(dish.servings)),
    ]
    qualifiers = []
    for usage in dish.scaled_ingredients:
        obj = _require_concept(usage.ingredient, f"dish {s} ingredient {usage.raw_surface!r}")
        edge = Triple(s, prop_iri(base, "has_ingredient"), obj)
        triples.append(edge)
        qualifiers.append(Qualifier(target=edge,
                                    properties=_quantity_properties(base, usage.quantity)))
    return TripleSet(triples=triples, qualifiers=qualifiers)


def platter_to_triples(platter: Platter, base: str, platter_id: str) -> TripleSet:
    kind = "Meal" if isinstance(platter, Meal) else "Platter"
    triples = [Triple(platter_id, RDF_TYPE, class_iri(base, kind))]
    qualifiers = []
    for dish, count in platter.dishes:
        dish_set = dish_to_triples(dish, base)
        dish_node = dish_set.triples[0].subject
        triples.extend(dish_set.triples)
        qualifiers.extend(dish_set.qualifiers)
        edge = Triple(platter_id, prop_iri(base, "has_dish"), dish_node)
        triples.append(edge)
        qualifiers.append(Qualifier(
            target=edge,
            properties=((prop_iri(base, "dish_count"), Literal.decimal(count)),),
        ))
    if isinstance(platter, Meal) and platter.occasion is not None:
        triples.append(Triple(platter_id, prop_iri(base, "occasion"), platter.occasion.iri))
    return TripleSet(triples=triples, qualifiers=qualifiers)


def term_to_triples(term: VocabularyTerm, base: str) -> TripleSet:
    from ..ontology.vocabulary import VocabularyStore  # avoids an import cycle

    store = VocabularyStore(base=base, terms={term.id: term})
    return TripleSet(triples=store.to_triples())


def to_triples(entity, base: str, **kwargs) -> TripleSet:
    """Dispatch on entity type; unresolved concept references are an error
    naming the reference."""
    if isinstance(entity, Recipe):
        return recipe_to_triples(entity, base)
    if isinstance(entity, Ingredient):
        return ingredient_to_triples(entity, base)
    if isinstance(entity, Dish):
        return dish_to_triples(entity, base, **kwargs)
    if isinstance(entity, Platter):
        return platter_to_triples(entity, base, **kwargs)
    if isinstance(entity, VocabularyTerm):
        return term_to_triples(entity, base)
    raise MappingError(f"cannot map entity of type {type(entity).__name__}")
