"""Embedded triple store: ingestion with set-union semantics, statistics,
defect diagnostics, and OWL serialization.

The store keeps plain S/P/O indexes in process and persists through the
Turtle / RDF/XML writers; no external graph database is required, and the
blank-node-free output can be imported by any store that reads RDF/XML.
"""

from __future__ import annotations

import threading
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

from . import rdfxml, turtle
from .triples import Literal, OWL, RDF_TYPE, RDFS, SKOS, Triple, TripleSet


class IngestError(ValueError):
    pass


def class_iri(base: str, name: str) -> str:
    return f"{base.rstrip('/')}/class/{name}"


def prop_iri(base: str, name: str) -> str:
    return f"{base.rstrip('/')}/prop/{name}"


CLASS_NAMES = [
    "Food", "Recipe", "Ingredient", "Dish", "Platter", "Meal",
    "CookingCharacteristics",
]

OBJECT_PROPERTIES = [
    "has_ingredient", "has_cooking_char", "is_a", "has_dish", "has_recipe",
    "ingr_is_substitute_for", "recp_is_relate_to", "paired_with",
    "derived_from_recipe", "cuisine", "diet_label", "ingredient_category",
    "occasion",
]

DATA_PROPERTIES = [
    "name", "alias", "serving_size", "calories", "instructions", "texture",
    "flavor", "cooking_temperature", "origin", "glycemic_index", "ph",
    "quantity_magnitude", "quantity_unit", "quantity_approximate",
    "dish_count", "servings", "provenance",
]


def schema_triples(base: str) -> list[Triple]:
    """The ontology schema: classes and properties, serialized alongside
    instances in one OWL document."""
    out: list[Triple] = []
    for name in CLASS_NAMES:
        out.append(Triple(class_iri(base, name), RDF_TYPE, OWL + "Class"))
    for name in ("Recipe", "Ingredient"):
        out.append(Triple(class_iri(base, name), RDFS + "subClassOf", class_iri(base, "Food")))
    out.append(Triple(class_iri(base, "Meal"), RDFS + "subClassOf", class_iri(base, "Platter")))
    for name in OBJECT_PROPERTIES:
        out.append(Triple(prop_iri(base, name), RDF_TYPE, OWL + "ObjectProperty"))
    for name in DATA_PROPERTIES:
        out.append(Triple(prop_iri(base, name), RDF_TYPE, OWL + "DatatypeProperty"))
    out.append(Triple(
        prop_iri(base, "ingr_is_substitute_for"), RDF_TYPE, OWL + "SymmetricProperty"
    ))
    return out


@dataclass
class GraphStats:
    recipe_count: int = 0
    ingredient_node_count: int = 0
    category_count: int = 0
    triple_count: int = 0
    relation_counts: dict = field(default_factory=dict)
    serialized_size_bytes: int | None = None

    def to_dict(self) -> dict:
        return {
            "recipe_count": self.recipe_count,
            "ingredient_node_count": self.ingredient_node_count,
            "category_count": self.category_count,
            "triple_count": self.triple_count,
            "relation_counts": dict(sorted(self.relation_counts.items())),
            "serialized_size_bytes": self.serialized_size_bytes,
        }


@dataclass
class DefectReport:
    code_mixed_nodes: list[str] = field(default_factory=list)
    duplication_candidates: list[dict] = field(default_factory=list)

    def is_clean(self) -> bool:
        return not (self.code_mixed_nodes or self.duplication_candidates)


class Graph:
    """Single writer, many readers; ingestion batches are all-or-nothing."""

    def __init__(self, base: str) -> None:
        self.base = base.rstrip("/")
        self._triples: set[Triple] = set()
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def triples(self) -> list[Triple]:
        return sorted(self._triples, key=Triple.sort_key)

    def objects(self, subject: str, predicate: str) -> list:
        return sorted(
            (t.object for t in self._triples
             if t.subject == subject and t.predicate == predicate),
            key=lambda o: (o.value if isinstance(o, Literal) else o),
        )

    def subjects_of_type(self, type_iri: str) -> list[str]:
        return sorted(
            t.subject for t in self._triples
            if t.predicate == RDF_TYPE and t.object == type_iri
        )

    # ------------------------------------------------------------- ingest

    def _check_class_collisions(self, triples: set[Triple]) -> None:
        recipe_cls = class_iri(self.base, "Recipe")
        ingredient_cls = class_iri(self.base, "Ingredient")
        derived = prop_iri(self.base, "derived_from_recipe")
        typed: dict[str, set[str]] = {}
        linked: set[str] = set()
        for t in triples:
            if t.predicate == RDF_TYPE and t.object in (recipe_cls, ingredient_cls):
                typed.setdefault(t.subject, set()).add(t.object)
            elif t.predicate == derived:
                linked.add(t.subject)
        for subject, classes in sorted(typed.items()):
            if len(classes) == 2 and subject not in linked:
                raise IngestError(
                    f"duplication defect: {subject} is asserted as both Recipe and "
                    f"Ingredient without a derived_from_recipe link"
                )

    def ingest(self, triple_set: TripleSet) -> GraphStats:
        """Set-union ingestion; re-ingesting identical triples changes
        nothing. Returns the delta (newly added counts only)."""
        incoming = set(triple_set.expanded(self.base))
        with self._lock:
            before = self._stats_locked()
            candidate = self._triples | incoming
            self._check_class_collisions(candidate)
            self._triples = candidate
            after = self._stats_locked()
        delta_relations = {
            p: after.relation_counts.get(p, 0) - before.relation_counts.get(p, 0)
            for p in set(after.relation_counts) | set(before.relation_counts)
        }
        return GraphStats(
            recipe_count=after.recipe_count - before.recipe_count,
            ingredient_node_count=after.ingredient_node_count - before.ingredient_node_count,
            category_count=after.category_count - before.category_count,
            triple_count=after.triple_count - before.triple_count,
            relation_counts={p: c for p, c in sorted(delta_relations.items()) if c},
        )

    # -------------------------------------------------------------- stats

    def _stats_locked(self) -> GraphStats:
        recipe_cls = class_iri(self.base, "Recipe")
        ingredient_cls = class_iri(self.base, "Ingredient")
        is_a = prop_iri(self.base, "is_a")
        recipes = set()
        ingredients = set()
        categories = set()
        relations: dict[str, int] = {}
        for t in self._triples:
            relations[t.predicate] = relations.get(t.predicate, 0) + 1
            if t.predicate == RDF_TYPE:
                if t.object == recipe_cls:
                    recipes.add(t.subject)
                elif t.object == ingredient_cls:
                    ingredients.add(t.subject)
            elif t.predicate == is_a and isinstance(t.object, str):
                categories.add(t.object)
        return GraphStats(
            recipe_count=len(recipes),
            ingredient_node_count=len(ingredients),
            category_count=len(categories),
            triple_count=len(self._triples),
            relation_counts=relations,
        )

    def stats(self) -> GraphStats:
        with self._lock:
            return self._stats_locked()

    # ------------------------------------------------------------ defects

    _LABEL_PREDICATES = None  # computed per call; depends on base

    def defect_report(self) -> DefectReport:
        """Two defect classes worth surfacing: nodes labeled only in
        non-Latin script (code-mixing candidates) and same-name recipe /
        ingredient node pairs lacking the associative link."""
        label_preds = {
            prop_iri(self.base, "name"),
            prop_iri(self.base, "alias"),
            RDFS + "label",
            SKOS + "prefLabel",
            SKOS + "altLabel",
        }
        labels: dict[str, list[str]] = {}
        derived_pairs: set[tuple[str, str]] = set()
        derived_pred = prop_iri(self.base, "derived_from_recipe")
        for t in self._triples:
            if t.predicate in label_preds and isinstance(t.object, Literal):
                labels.setdefault(t.subject, []).append(t.object.value)
            elif t.predicate == derived_pred and isinstance(t.object, str):
                derived_pairs.add((t.subject, t.object))

        def latin(text: str) -> bool:
            return any(
                "LATIN" in unicodedata.name(c, "") for c in text if c.isalpha()
            )

        code_mixed = sorted(
            node for node, node_labels in labels.items()
            if node_labels and not any(latin(l) for l in node_labels)
        )

        recipe_ns = f"{self.base}/recipe/"
        ingredient_ns = f"{self.base}/ingredient/"
        recipe_slugs: dict[str, str] = {}
        ingredient_slugs: dict[str, str] = {}
        for t in self._triples:
            for node in [t.subject] + ([t.object] if isinstance(t.object, str) else []):
                if node.startswith(recipe_ns):
                    recipe_slugs[node[len(recipe_ns):]] = node
                elif node.startswith(ingredient_ns):
                    ingredient_slugs[node[len(ingredient_ns):]] = node

        duplications = []
        for slug in sorted(set(recipe_slugs) & set(ingredient_slugs)):
            ingredient_node = ingredient_slugs[slug]
            recipe_node = recipe_slugs[slug]
            if (ingredient_node, recipe_node) not in derived_pairs:
                duplications.append({
                    "slug": slug,
                    "recipe": recipe_node,
                    "ingredient": ingredient_node,
                })
        return DefectReport(code_mixed_nodes=code_mixed, duplication_candidates=duplications)

    # -------------------------------------------------------- persistence

    def _prefixes(self) -> dict[str, str]:
        return {
            "kgfc": self.base + "/class/",
            "kgfp": self.base + "/prop/",
        }

    def serialize(self, path: str | Path, format: str = "rdfxml",
                  include_schema: bool = True) -> int:
        """Write the graph (schema + instances) to one OWL file. Returns the
        serialized size in bytes."""
        triples = set(self._triples)
        if include_schema:
            triples |= set(schema_triples(self.base))
        ordered = sorted(triples, key=Triple.sort_key)
        if format == "rdfxml":
            text = rdfxml.dumps(ordered, extra_prefixes=self._prefixes())
        elif format == "turtle":
            text = turtle.dumps(ordered, extra_prefixes=self._prefixes())
        else:
            raise ValueError(f"unknown serialization format: {format!r}")
        data = text.encode("utf-8")
        Path(path).write_bytes(data)
        return len(data)

    @classmethod
    def load(cls, path: str | Path, base: str) -> "Graph":
        path = Path(path)
        text = path.read_text(encoding="utf-8")
        if path.suffix in (".ttl", ".turtle"):
            triples = turtle.loads(text)
        else:
            triples = rdfxml.loads(text)
        graph = cls(base)
        graph._triples = set(triples)
        return graph
