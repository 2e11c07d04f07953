"""Core vocabulary concepts: identifiers, language-tagged labels, SKOS-style terms.

Concept identifiers are absolute IRIs of the form ``<base>/<scheme>/<slug>``
where the slug is derived deterministically from the canonical (preferred)
label, so the same concept always gets the same IRI across runs.
"""

from __future__ import annotations

import hashlib
import re
import unicodedata
from dataclasses import dataclass, field
from decimal import Decimal
from enum import Enum

DEFAULT_BASE_IRI = "https://kgforge.example.org"

_SLUG_STRIP = re.compile(r"[^a-z0-9]+")


class Scheme(str, Enum):
    """Controlled-vocabulary schemes. Every term belongs to exactly one."""

    INGREDIENT = "ingredient"
    INGREDIENT_CATEGORY = "ingredient_category"
    CUISINE = "cuisine"
    COOKING_TECHNIQUE = "cooking_technique"
    COOKWARE = "cookware"
    MEALTIME = "mealtime"
    RECIPE_CATEGORY = "recipe_category"
    RECIPE = "recipe"
    DIETARY_PRACTICE = "dietary_practice"
    ALLERGEN_LABEL = "allergen_label"
    HEALTH_LABEL = "health_label"
    UNIT = "unit"


#: Diet labels are drawn from these three subschemes only.
DIET_LABEL_SCHEMES = (Scheme.DIETARY_PRACTICE, Scheme.ALLERGEN_LABEL, Scheme.HEALTH_LABEL)


class UnitKind(str, Enum):
    MASS = "mass"
    VOLUME = "volume"
    COUNT = "count"
    VESSEL = "vessel"
    LINGUISTIC = "linguistic"


def slugify(text: str) -> str:
    """Lowercase ASCII slug of a label; hash fallback for labels with no
    ASCII content (e.g. Devanagari-only names)."""
    decomposed = unicodedata.normalize("NFKD", text.lower())
    ascii_text = decomposed.encode("ascii", "ignore").decode("ascii")
    slug = _SLUG_STRIP.sub("-", ascii_text).strip("-")
    if not slug:
        slug = "x" + hashlib.sha1(text.encode("utf-8")).hexdigest()[:10]
    return slug


def normalize_surface(surface: str) -> str:
    """Matching key for lookups: casefolded, diacritics stripped, punctuation
    collapsed to single spaces."""
    decomposed = unicodedata.normalize("NFKD", surface.casefold())
    kept = "".join(c for c in decomposed if not unicodedata.combining(c))
    kept = re.sub(r"[^\w\s]", " ", kept, flags=re.UNICODE)
    return re.sub(r"\s+", " ", kept).strip()


@dataclass(frozen=True, order=True)
class ConceptId:
    """Absolute IRI identifying one concept in the graph."""

    iri: str

    def __post_init__(self) -> None:
        if "://" not in self.iri:
            raise ValueError(f"concept IRI must be absolute: {self.iri!r}")

    @classmethod
    def mint(cls, scheme: Scheme | str, label: str, base: str = DEFAULT_BASE_IRI) -> "ConceptId":
        scheme_name = scheme.value if isinstance(scheme, Scheme) else scheme
        return cls(f"{base.rstrip('/')}/{scheme_name}/{slugify(label)}")

    @property
    def slug(self) -> str:
        return self.iri.rsplit("/", 1)[-1]

    def __str__(self) -> str:
        return self.iri


@dataclass(frozen=True, order=True)
class LangString:
    """A language-tagged string (tag is a BCP-47-ish lowercase code)."""

    text: str
    language: str = "en"

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("label text must be non-empty")


@dataclass
class VocabularyTerm:
    """A SKOS-style concept: one preferred label per language, any number of
    alternate labels, membership in exactly one scheme, optional hierarchy."""

    id: ConceptId
    pref_label: LangString
    scheme: Scheme
    alt_labels: list[LangString] = field(default_factory=list)
    notation: str | None = None
    broader: ConceptId | None = None
    narrower: list[ConceptId] = field(default_factory=list)
    note: str | None = None
    # unit-scheme terms only
    unit_kind: UnitKind | None = None
    grams_equivalent: Decimal | None = None

    @classmethod
    def create(
        cls,
        scheme: Scheme,
        pref_label: str,
        *,
        language: str = "en",
        alt_labels: list[tuple[str, str] | str] | None = None,
        base: str = DEFAULT_BASE_IRI,
        **kwargs,
    ) -> "VocabularyTerm":
        alts = []
        for alt in alt_labels or []:
            if isinstance(alt, str):
                alts.append(LangString(alt))
            else:
                alts.append(LangString(alt[0], alt[1]))
        return cls(
            id=ConceptId.mint(scheme, pref_label, base=base),
            pref_label=LangString(pref_label, language),
            scheme=scheme,
            alt_labels=alts,
            **kwargs,
        )

    def all_labels(self) -> list[LangString]:
        return [self.pref_label, *self.alt_labels]

    def content_hash(self) -> str:
        """Hash of the term content; identical content hashes mean a re-upsert
        is a no-op apart from the audit trail."""
        parts = [
            self.id.iri,
            self.scheme.value,
            self.pref_label.text,
            self.pref_label.language,
            self.notation or "",
            self.broader.iri if self.broader else "",
            self.note or "",
            self.unit_kind.value if self.unit_kind else "",
            str(self.grams_equivalent) if self.grams_equivalent is not None else "",
        ]
        parts.extend(sorted(f"{a.text}@{a.language}" for a in self.alt_labels))
        parts.extend(sorted(n.iri for n in self.narrower))
        return hashlib.sha256("\x1f".join(parts).encode("utf-8")).hexdigest()
