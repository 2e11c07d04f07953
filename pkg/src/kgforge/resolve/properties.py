"""Semantic property-name resolution across source domains.

Recipe blogs disagree on field names ("region" or "style" for cuisine); the
property map folds raw names into the ontology's canonical property list and
records which vocabulary schemes control each property's values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import yaml

from ..ontology.concepts import Scheme


@dataclass
class PropertySpec:
    name: str
    schemes: list[Scheme] = field(default_factory=list)
    multi: bool = False

    @property
    def controlled(self) -> bool:
        return bool(self.schemes)


class PropertyMap:
    def __init__(
        self,
        aliases: dict[str, str],
        properties: dict[str, PropertySpec],
        domain_aliases: dict[str, dict[str, str]] | None = None,
    ) -> None:
        self.aliases = {k.lower(): v for k, v in aliases.items()}
        self.properties = properties
        self.domain_aliases = {
            d: {k.lower(): v for k, v in m.items()}
            for d, m in (domain_aliases or {}).items()
        }
        self.unmapped_counts: dict[str, int] = {}

    def map_property_name(self, raw_property: str, source_domain: str = "") -> str:
        """Canonical property for a raw source property. Unknown names are
        returned unchanged and counted for curation."""
        key = raw_property.strip().lower()
        domain_map = self.domain_aliases.get(source_domain, {})
        if key in domain_map:
            return domain_map[key]
        if key in self.aliases:
            return self.aliases[key]
        if key in self.properties:
            return key
        if key.startswith("nutrition_"):
            return key
        self.unmapped_counts[key] = self.unmapped_counts.get(key, 0) + 1
        return raw_property

    def spec_for(self, canonical: str) -> PropertySpec:
        return self.properties.get(canonical, PropertySpec(canonical))

    @classmethod
    def load(cls, path: str | Path) -> "PropertyMap":
        data = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
        properties = {}
        for name, spec in (data.get("properties") or {}).items():
            properties[name] = PropertySpec(
                name=name,
                schemes=[Scheme(s) for s in spec.get("schemes", [])],
                multi=bool(spec.get("multi", False)),
            )
        return cls(
            aliases={str(k): str(v) for k, v in (data.get("aliases") or {}).items()},
            properties=properties,
            domain_aliases={
                str(d): {str(k): str(v) for k, v in m.items()}
                for d, m in (data.get("domains") or {}).items()
            },
        )
