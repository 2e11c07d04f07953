"""Domain model: recipes, ingredients, measured quantities, dishes, platters.

Recipes are the central entity. Every measured ingredient usage keeps its raw
surface text as provenance; quantities distinguish resolved units, vessel
units with gram equivalents, and approximate linguistic measures ("a little")
which never gram-normalize.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal
from enum import Enum
from pathlib import Path

from .concepts import ConceptId, DIET_LABEL_SCHEMES, LangString, Scheme, UnitKind


@dataclass(frozen=True)
class UnitDefinition:
    """A measurement unit; vessel units must carry a gram equivalent
    (e.g. bowl -> 250 g) so kitchen-container measures can be normalized."""

    unit: ConceptId
    kind: UnitKind
    grams_equivalent: Decimal | None = None

    def __post_init__(self) -> None:
        if self.grams_equivalent is not None and self.grams_equivalent <= 0:
            raise ValueError(f"grams_equivalent must be positive: {self.unit}")
        if self.kind is UnitKind.VESSEL and self.grams_equivalent is None:
            raise ValueError(f"vessel unit {self.unit} needs a grams_equivalent")


@dataclass(frozen=True)
class Quantity:
    """A measured amount. ``unit`` is a unit-scheme concept when resolved, or
    the bare linguistic token ("a little") for approximate measures."""

    magnitude: Decimal
    unit: ConceptId | str | None = None
    approximate: bool = False

    def __post_init__(self) -> None:
        if self.magnitude < 0:
            raise ValueError(f"magnitude must be nonnegative: {self.magnitude}")

    def grams(self, units: "UnitTable") -> Decimal | None:
        """Gram-normalized magnitude, or None when the unit has no gram
        equivalent (approximate and count quantities never normalize)."""
        if self.approximate or not isinstance(self.unit, ConceptId):
            return None
        definition = units.get(self.unit)
        if definition is None or definition.grams_equivalent is None:
            return None
        return self.magnitude * definition.grams_equivalent


class UnitTable:
    """Lookup of unit definitions keyed by concept id."""

    def __init__(self, definitions: list[UnitDefinition] | None = None) -> None:
        self._by_id: dict[ConceptId, UnitDefinition] = {}
        for d in definitions or []:
            self.add(d)

    def add(self, definition: UnitDefinition) -> None:
        self._by_id[definition.unit] = definition

    def get(self, unit: ConceptId) -> UnitDefinition | None:
        return self._by_id.get(unit)

    def gram_unit(self) -> ConceptId | None:
        for concept in self._by_id:
            if concept.slug == "gram":
                return concept
        return None

    def __len__(self) -> int:
        return len(self._by_id)


class IngredientForm(str, Enum):
    """How an ingredient enters a recipe; coriander as fresh herb vs powder
    is not interchangeable."""

    FRESH_HERB = "fresh_herb"
    DRIED_SEEDS = "dried_seeds"
    POWDER = "powder"
    PASTE = "paste"
    WHOLE = "whole"
    OTHER = "other"


@dataclass
class IngredientUsage:
    """One measured ingredient line of a recipe. ``ingredient`` may stay an
    unresolved surface string until curation resolves it."""

    ingredient: ConceptId | str
    quantity: Quantity
    raw_surface: str
    form: IngredientForm | None = None
    language: str | None = None
    scale_note: str | None = None

    def __post_init__(self) -> None:
        if not self.raw_surface:
            raise ValueError("raw_surface must record the extraction provenance")


@dataclass
class CookingCharacteristics:
    """Aggregate of how a recipe is cooked: techniques, cookware, heat, time."""

    techniques: list[ConceptId] = field(default_factory=list)
    cookware: list[ConceptId] = field(default_factory=list)
    temperature: str | None = None
    durations: dict[str, Decimal] = field(default_factory=dict)

    def is_empty(self) -> bool:
        return not (self.techniques or self.cookware or self.temperature or self.durations)


class NutritionProfile(dict):
    """Map of nutrient concept -> (amount, unit concept). Amounts are
    nonnegative; energy is tracked separately on the recipe (calories)."""

    def set_amount(self, nutrient: ConceptId, amount: Decimal, unit: ConceptId) -> None:
        if amount < 0:
            raise ValueError(f"nutrient amount must be nonnegative: {nutrient}")
        self[nutrient] = (amount, unit)

    def scaled(self, factor: Decimal) -> "NutritionProfile":
        out = NutritionProfile()
        for nutrient, (amount, unit) in self.items():
            out[nutrient] = (amount * factor, unit)
        return out


class IngredientOrigin(str, Enum):
    PLANT = "plant"
    ANIMAL = "animal"
    FUNGUS = "fungus"
    CHEMICAL = "chemical"


@dataclass
class Ingredient:
    """One ingredient concept: a single instance per concept, carrying every
    vernacular name, categorization and (when known) nutrition per 100 g."""

    id: ConceptId
    names: list[LangString]
    origin: IngredientOrigin
    categories: list[ConceptId] = field(default_factory=list)
    flavor: str | None = None
    glycemic_index: Decimal | None = None
    ph: Decimal | None = None
    nutrition_per_100g: NutritionProfile | None = None
    substitutes: list[ConceptId] = field(default_factory=list)
    derived_from_recipe: ConceptId | None = None

    def __post_init__(self) -> None:
        if not self.names:
            raise ValueError(f"ingredient {self.id} needs at least one name")
        if self.ph is not None and not (0 <= self.ph <= 14):
            raise ValueError(f"pH out of range for {self.id}: {self.ph}")


@dataclass
class Recipe:
    """The central entity. Instances are unique even when names collide;
    regional recipe variants stay distinct objects."""

    id: ConceptId
    name: str
    serving_size: int
    instructions: str = ""
    aliases: list[LangString] = field(default_factory=list)
    subclass: ConceptId | None = None
    cuisine: ConceptId | None = None
    calories: Decimal | None = None
    characteristics: CookingCharacteristics = field(default_factory=CookingCharacteristics)
    ingredients: list[IngredientUsage] = field(default_factory=list)
    pairing: list[ConceptId | str] = field(default_factory=list)
    diet_labels: list[ConceptId] = field(default_factory=list)
    nutrition: NutritionProfile | None = None
    texture: str | None = None
    flavor: str | None = None
    provenance: "str | None" = None  # corpus entry id

    def __post_init__(self) -> None:
        if self.serving_size < 1:
            raise ValueError(f"serving_size must be >= 1: {self.serving_size}")
        for label in self.diet_labels:
            scheme = label.iri.rsplit("/", 2)[-2]
            if scheme not in {s.value for s in DIET_LABEL_SCHEMES}:
                raise ValueError(f"diet label {label} not from a diet subscheme")


@dataclass
class Dish:
    """A recipe scaled to a concrete number of servings."""

    recipe: ConceptId
    servings: Decimal
    scaled_ingredients: list[IngredientUsage]

    def __post_init__(self) -> None:
        if self.servings <= 0:
            raise ValueError(f"servings must be positive: {self.servings}")


@dataclass
class Platter:
    """A composition of dishes viewed as a single entity (a thali)."""

    dishes: list[tuple[Dish, Decimal]]

    def __post_init__(self) -> None:
        if not self.dishes:
            raise ValueError("a platter needs at least one dish")
        for _, count in self.dishes:
            if count <= 0:
                raise ValueError("dish counts must be positive")


@dataclass
class Meal(Platter):
    """A platter tied to an occasion or time of day."""

    occasion: ConceptId | None = None


class IngredientStore:
    """Indexed ingredient records. Reads are lock-free over immutable values;
    mutation goes through :meth:`add` which keeps the symmetry invariant for
    substitutes."""

    def __init__(self) -> None:
        self._by_id: dict[ConceptId, Ingredient] = {}
        self._by_name: dict[str, ConceptId] = {}

    def add(self, ingredient: Ingredient) -> None:
        from .concepts import normalize_surface

        self._by_id[ingredient.id] = ingredient
        for name in ingredient.names:
            self._by_name[normalize_surface(name.text)] = ingredient.id
        for other_id in ingredient.substitutes:
            other = self._by_id.get(other_id)
            if other is not None and ingredient.id not in other.substitutes:
                other.substitutes.append(ingredient.id)

    def get(self, ingredient_id: ConceptId) -> Ingredient | None:
        return self._by_id.get(ingredient_id)

    def find_by_name(self, surface: str) -> Ingredient | None:
        from .concepts import normalize_surface

        concept = self._by_name.get(normalize_surface(surface))
        return self._by_id.get(concept) if concept else None

    def __iter__(self):
        return iter(sorted(self._by_id.values(), key=lambda i: i.id))

    def __len__(self) -> int:
        return len(self._by_id)

    @classmethod
    def from_json(cls, path: str | Path, base: str) -> "IngredientStore":
        """Load ingredient records from the seed JSON file (see
        seed/ingredients.json for the schema)."""
        from .concepts import DEFAULT_BASE_IRI  # noqa: F401  (schema docs)

        store = cls()
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        pending_subs: list[tuple[ConceptId, str]] = []
        for row in data["ingredients"]:
            names = [LangString(n["text"], n.get("language", "en")) for n in row["names"]]
            nutrition = None
            if "nutrition_per_100g" in row:
                nutrition = NutritionProfile()
                for nutrient, amount in row["nutrition_per_100g"].items():
                    nutrition.set_amount(
                        ConceptId(f"{base.rstrip('/')}/nutrient/{nutrient}"),
                        Decimal(str(amount)),
                        ConceptId.mint(Scheme.UNIT, "gram", base=base),
                    )
            ingredient = Ingredient(
                id=ConceptId.mint(Scheme.INGREDIENT, row["name"], base=base),
                names=names,
                origin=IngredientOrigin(row["origin"]),
                categories=[
                    ConceptId.mint(Scheme.INGREDIENT_CATEGORY, c, base=base)
                    for c in row.get("categories", [])
                ],
                flavor=row.get("flavor"),
                glycemic_index=Decimal(str(row["glycemic_index"])) if "glycemic_index" in row else None,
                ph=Decimal(str(row["ph"])) if "ph" in row else None,
                nutrition_per_100g=nutrition,
                derived_from_recipe=(
                    ConceptId.mint(Scheme.RECIPE, row["derived_from_recipe"], base=base)
                    if "derived_from_recipe" in row
                    else None
                ),
            )
            store.add(ingredient)
            for sub in row.get("substitutes", []):
                pending_subs.append((ingredient.id, sub))
        for ingredient_id, sub_name in pending_subs:
            sub_id = ConceptId.mint(Scheme.INGREDIENT, sub_name, base=base)
            record = store.get(ingredient_id)
            if record is not None and sub_id not in record.substitutes:
                record.substitutes.append(sub_id)
                other = store.get(sub_id)
                if other is not None and ingredient_id not in other.substitutes:
                    other.substitutes.append(ingredient_id)
        return store
