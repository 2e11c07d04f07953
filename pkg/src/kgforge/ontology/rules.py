"""Restriction rules and diet-label derivation.

A rule says: when a recipe carries a trigger label (cuisine or diet label),
there must exist / must not exist an ingredient whose (origin, category)
profile satisfies a boolean pattern. Patterns are tiny expressions over
``origin:<name>`` and ``category:<name>`` atoms combined with ``&``, ``|``,
``!`` and parentheses, e.g. the Jain rule::

    (category:meat & origin:animal) | category:root_vegetable | category:bulb_vegetable

Rules double as label derivers: exists-rules fire generatively (meat present
-> Non-vegetarian), not-exists rules fire when nothing matches (no meat/egg
-> Vegetarian). Allergen labels derive from category absence.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import yaml

from .concepts import ConceptId, DEFAULT_BASE_IRI, Scheme, slugify
from .models import Ingredient, IngredientStore, Recipe


class RuleMode(str, Enum):
    EXISTS = "exists"
    NOT_EXISTS = "not_exists"


class PatternError(ValueError):
    pass


class _Node:
    def evaluate(self, ingredient: Ingredient) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class _Atom(_Node):
    kind: str  # "origin" | "category"
    value: str

    def evaluate(self, ingredient: Ingredient) -> bool:
        if self.kind == "origin":
            return ingredient.origin.value == self.value
        return any(c.slug == self.value for c in ingredient.categories)


@dataclass(frozen=True)
class _Not(_Node):
    operand: _Node

    def evaluate(self, ingredient: Ingredient) -> bool:
        return not self.operand.evaluate(ingredient)


@dataclass(frozen=True)
class _BinOp(_Node):
    op: str
    left: _Node
    right: _Node

    def evaluate(self, ingredient: Ingredient) -> bool:
        if self.op == "&":
            return self.left.evaluate(ingredient) and self.right.evaluate(ingredient)
        return self.left.evaluate(ingredient) or self.right.evaluate(ingredient)


_PATTERN_TOKEN = re.compile(r"\s*(?:(origin|category)\s*:\s*([\w-]+)|([()&|!]))")


def parse_pattern(text: str) -> _Node:
    """Parse a category pattern into an evaluable expression tree."""
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(text):
        m = _PATTERN_TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise PatternError(f"bad pattern near {text[pos:pos+20]!r}")
            break
        if m.group(1):
            tokens.append(("atom", f"{m.group(1)}:{m.group(2)}"))
        else:
            tokens.append(("op", m.group(3)))
        pos = m.end()

    index = 0

    def peek() -> tuple[str, str] | None:
        return tokens[index] if index < len(tokens) else None

    def take() -> tuple[str, str]:
        nonlocal index
        tok = peek()
        if tok is None:
            raise PatternError("unexpected end of pattern")
        index += 1
        return tok

    def parse_or() -> _Node:
        node = parse_and()
        while peek() == ("op", "|"):
            take()
            node = _BinOp("|", node, parse_and())
        return node

    def parse_and() -> _Node:
        node = parse_unary()
        while peek() == ("op", "&"):
            take()
            node = _BinOp("&", node, parse_unary())
        return node

    def parse_unary() -> _Node:
        kind, value = take()
        if (kind, value) == ("op", "!"):
            return _Not(parse_unary())
        if (kind, value) == ("op", "("):
            node = parse_or()
            if take() != ("op", ")"):
                raise PatternError("unbalanced parentheses")
            return node
        if kind == "atom":
            k, v = value.split(":", 1)
            return _Atom(k, slugify(v) if k == "category" else v)
        raise PatternError(f"unexpected token {value!r}")

    node = parse_or()
    if peek() is not None:
        raise PatternError(f"trailing tokens after pattern: {tokens[index:]}")
    return node


@dataclass
class RestrictionRule:
    id: str
    trigger_label: ConceptId
    mode: RuleMode
    category_pattern: str
    message: str

    def __post_init__(self) -> None:
        self._tree = parse_pattern(self.category_pattern)

    def matches(self, ingredient: Ingredient) -> bool:
        return self._tree.evaluate(ingredient)


class ViolationKind(str, Enum):
    FAILED = "failed"
    UNRESOLVABLE = "unresolvable"


@dataclass(frozen=True)
class Violation:
    rule_id: str
    kind: ViolationKind
    message: str
    witnesses: tuple = ()  # (ingredient iri, category slugs) per witness


@dataclass
class RuleSet:
    rules: list[RestrictionRule] = field(default_factory=list)
    #: allergen label slug -> ingredient category slugs whose absence earns it
    allergen_absence: dict[str, list[str]] = field(default_factory=dict)


def _triggered(rule: RestrictionRule, recipe: Recipe) -> bool:
    if rule.trigger_label in recipe.diet_labels:
        return True
    return recipe.cuisine is not None and recipe.cuisine == rule.trigger_label


def _split_resolved(recipe: Recipe, db: IngredientStore):
    resolved: list[Ingredient] = []
    unresolved: list[str] = []
    for usage in recipe.ingredients:
        record = None
        if isinstance(usage.ingredient, ConceptId):
            record = db.get(usage.ingredient)
        else:
            record = db.find_by_name(usage.ingredient)
        if record is None:
            unresolved.append(usage.raw_surface)
        else:
            resolved.append(record)
    return resolved, unresolved


def check_restrictions(
    recipe: Recipe, rules: list[RestrictionRule], ingredient_db: IngredientStore
) -> list[Violation]:
    """One Violation per failed rule, with witnessing (or missing) ingredient
    categories; an empty list means the recipe is consistent. Rules that
    cannot be decided because of unresolved ingredients yield an
    ``unresolvable`` violation, signalling curation rather than failure."""
    resolved, unresolved = _split_resolved(recipe, ingredient_db)
    violations: list[Violation] = []
    for rule in rules:
        if not _triggered(rule, recipe):
            continue
        witnesses = tuple(
            (i.id.iri, tuple(sorted(c.slug for c in i.categories)))
            for i in resolved
            if rule.matches(i)
        )
        if rule.mode is RuleMode.EXISTS:
            if witnesses:
                continue
            if unresolved:
                violations.append(Violation(
                    rule.id, ViolationKind.UNRESOLVABLE,
                    f"{rule.message} (unresolved ingredients: {', '.join(unresolved)})",
                ))
            else:
                violations.append(Violation(
                    rule.id, ViolationKind.FAILED,
                    f"{rule.message} (no ingredient matches {rule.category_pattern})",
                ))
        else:
            if witnesses:
                violations.append(Violation(
                    rule.id, ViolationKind.FAILED, rule.message, witnesses
                ))
            elif unresolved:
                violations.append(Violation(
                    rule.id, ViolationKind.UNRESOLVABLE,
                    f"{rule.message} (unresolved ingredients: {', '.join(unresolved)})",
                ))
    return violations


@dataclass
class DerivedLabels:
    labels: list[ConceptId]
    provisional: set[ConceptId] = field(default_factory=set)


def derive_diet_labels(
    recipe: Recipe,
    rule_set: RuleSet,
    ingredient_db: IngredientStore,
    base: str = DEFAULT_BASE_IRI,
) -> DerivedLabels:
    """Diet labels the ingredients support, unioned with the extracted ones
    (extracted labels are never removed). Deterministic; labels that depend
    on unresolved ingredients are marked provisional."""
    resolved, unresolved = _split_resolved(recipe, ingredient_db)
    labels: dict[ConceptId, bool] = {l: False for l in recipe.diet_labels}

    for rule in rule_set.rules:
        if rule.trigger_label.iri.rsplit("/", 2)[-2] != Scheme.DIETARY_PRACTICE.value:
            continue
        if rule.mode is RuleMode.EXISTS:
            if any(rule.matches(i) for i in resolved):
                labels.setdefault(rule.trigger_label, False)
        else:
            if any(rule.matches(i) for i in resolved):
                continue  # exclusion fires: a matching ingredient is present
            if rule.trigger_label not in labels:
                labels[rule.trigger_label] = bool(unresolved)

    for label_slug, categories in sorted(rule_set.allergen_absence.items()):
        present = any(
            c.slug in categories for i in resolved for c in i.categories
        )
        if not present:
            label = ConceptId.mint(Scheme.ALLERGEN_LABEL, label_slug, base=base)
            if label not in labels:
                labels[label] = bool(unresolved)

    ordered = sorted(labels, key=lambda c: c.iri)
    provisional = {l for l, p in labels.items() if p}
    return DerivedLabels(ordered, provisional)


def load_rules(path: str | Path, base: str = DEFAULT_BASE_IRI) -> RuleSet:
    """Read the YAML rules file (see seed/rules.yaml for the schema)."""
    data = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
    rules = []
    for row in data.get("rules", []):
        scheme_name, _, slug = row["trigger"].partition("/")
        trigger = ConceptId(f"{base.rstrip('/')}/{scheme_name}/{slug}")
        rules.append(RestrictionRule(
            id=str(row["id"]),
            trigger_label=trigger,
            mode=RuleMode(row["mode"]),
            category_pattern=row["pattern"],
            message=row.get("message", f"rule {row['id']} violated"),
        ))
    allergen = {
        str(label): [slugify(str(c)) for c in cats]
        for label, cats in (data.get("allergen_absence") or {}).items()
    }
    return RuleSet(rules=rules, allergen_absence=allergen)
