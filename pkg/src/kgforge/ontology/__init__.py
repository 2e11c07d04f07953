"""Food ontology: concepts, vocabulary store, domain models, rules."""

from .concepts import (
    ConceptId,
    DEFAULT_BASE_IRI,
    DIET_LABEL_SCHEMES,
    LangString,
    Scheme,
    UnitKind,
    VocabularyTerm,
    normalize_surface,
    slugify,
)
from .models import (
    CookingCharacteristics,
    Dish,
    Ingredient,
    IngredientForm,
    IngredientOrigin,
    IngredientStore,
    IngredientUsage,
    Meal,
    NutritionProfile,
    Platter,
    Quantity,
    Recipe,
    UnitDefinition,
    UnitTable,
)
from .nutrition import NutritionResult, compute_nutrition, scale_dish, scale_recipe
from .quantities import parse_ingredient_line
from .rules import (
    DerivedLabels,
    RestrictionRule,
    RuleMode,
    RuleSet,
    Violation,
    ViolationKind,
    check_restrictions,
    derive_diet_labels,
    load_rules,
)
from .vocabulary import (
    MatchKind,
    VocabularyError,
    VocabularyStore,
    load_vocabulary,
    verify_invariants,
)

__all__ = [
    "ConceptId",
    "CookingCharacteristics",
    "DEFAULT_BASE_IRI",
    "DIET_LABEL_SCHEMES",
    "DerivedLabels",
    "Dish",
    "Ingredient",
    "IngredientForm",
    "IngredientOrigin",
    "IngredientStore",
    "IngredientUsage",
    "LangString",
    "MatchKind",
    "Meal",
    "NutritionProfile",
    "NutritionResult",
    "Platter",
    "Quantity",
    "Recipe",
    "RestrictionRule",
    "RuleMode",
    "RuleSet",
    "Scheme",
    "UnitDefinition",
    "UnitKind",
    "UnitTable",
    "Violation",
    "ViolationKind",
    "VocabularyError",
    "VocabularyStore",
    "VocabularyTerm",
    "check_restrictions",
    "compute_nutrition",
    "derive_diet_labels",
    "load_rules",
    "load_vocabulary",
    "normalize_surface",
    "parse_ingredient_line",
    "scale_dish",
    "scale_recipe",
    "slugify",
    "verify_invariants",
]
