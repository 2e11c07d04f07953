"""Recipe scaling and linear nutrition aggregation.

Scaling multiplies every numeric quantity by servings/serving_size after
converting gram-normalizable units (mass and vessel measures like "1 bowl"
= 250 g) to grams. Approximate quantities ("a little") are never scaled;
the multiplier is carried as a display note only.

Nutrition is aggregated linearly over gram-normalized ingredient masses at
amount-per-100g rates. No cooking-loss factors are applied; callers can
post-scale with a loss factor if they have one.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from decimal import Decimal

from .concepts import ConceptId, Scheme
from .models import (
    Dish,
    IngredientStore,
    IngredientUsage,
    NutritionProfile,
    Quantity,
    Recipe,
    UnitTable,
)


def _scale_usage(
    usage: IngredientUsage, factor: Decimal, units: UnitTable, gram: ConceptId | None
) -> IngredientUsage:
    q = usage.quantity
    if q.approximate:
        note = None if factor == 1 else f"x{factor.normalize()}"
        return replace(usage, scale_note=note)
    grams = q.grams(units)
    if grams is not None and gram is not None and factor != 1:
        new_q = Quantity(grams * factor, unit=gram)
    else:
        new_q = Quantity(q.magnitude * factor, unit=q.unit)
    return replace(usage, quantity=new_q, scale_note=None)


def scale_recipe(recipe: Recipe, servings: Decimal | int, units: UnitTable) -> Dish:
    """Scale a recipe to a dish serving ``servings`` people."""
    servings = Decimal(servings)
    if servings <= 0:
        raise ValueError(f"servings must be positive: {servings}")
    factor = servings / Decimal(recipe.serving_size)
    gram = units.gram_unit()
    scaled = [_scale_usage(u, factor, units, gram) for u in recipe.ingredients]
    return Dish(recipe=recipe.id, servings=servings, scaled_ingredients=scaled)


def scale_dish(dish: Dish, servings: Decimal | int, units: UnitTable) -> Dish:
    """Re-scale an existing dish to a new serving count."""
    servings = Decimal(servings)
    if servings <= 0:
        raise ValueError(f"servings must be positive: {servings}")
    factor = servings / dish.servings
    gram = units.gram_unit()
    scaled = [_scale_usage(u, factor, units, gram) for u in dish.scaled_ingredients]
    return Dish(recipe=dish.recipe, servings=servings, scaled_ingredients=scaled)


@dataclass
class NutritionResult:
    """Per-recipe totals plus the per-serving view; ingredients that could
    not be gram-normalized or have no nutrition data are listed, not hidden."""

    profile: NutritionProfile
    per_serving: NutritionProfile
    missing: list[str] = field(default_factory=list)


def compute_nutrition(
    recipe: Recipe, ingredient_db: IngredientStore, units: UnitTable
) -> NutritionResult:
    """Sum nutrient amounts over gram-normalizable ingredients:
    amount_per_100g x grams / 100, linearly."""
    totals = NutritionProfile()
    missing: list[str] = []
    for usage in recipe.ingredients:
        grams = usage.quantity.grams(units)
        record = None
        if isinstance(usage.ingredient, ConceptId):
            record = ingredient_db.get(usage.ingredient)
        else:
            record = ingredient_db.find_by_name(usage.ingredient)
        if grams is None or record is None or record.nutrition_per_100g is None:
            missing.append(usage.raw_surface)
            continue
        for nutrient, (amount, unit) in record.nutrition_per_100g.items():
            current = totals.get(nutrient)
            contribution = amount * grams / Decimal(100)
            if current is None:
                totals[nutrient] = (contribution, unit)
            else:
                totals[nutrient] = (current[0] + contribution, unit)
    per_serving = totals.scaled(Decimal(1) / Decimal(recipe.serving_size))
    return NutritionResult(profile=totals, per_serving=per_serving, missing=missing)
