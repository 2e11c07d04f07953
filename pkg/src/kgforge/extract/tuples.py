"""Extraction tuples and their XML serialization.

A tuple is one (subject, property, value) assertion tagged by channel (CARD
for recipe-card parses, LLM for provider output). Ingredient tuples carry
the measured quantity alongside the name value so the labeled has_ingredient
edge survives into the graph. Files round-trip losslessly with stable
element ordering for diffability.
"""

from __future__ import annotations

import io
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field, replace
from decimal import Decimal
from enum import Enum
from pathlib import Path
from xml.sax.saxutils import escape, quoteattr

from ..ontology.concepts import ConceptId
from ..ontology.models import Quantity


class Channel(str, Enum):
    CARD = "CARD"
    LLM = "LLM"


@dataclass(frozen=True)
class Tuple:
    """One extracted assertion. ``property`` holds the raw source property
    until semantic resolution, then the canonical name; ``raw_property``
    preserves the original for provenance."""

    subject: str
    property: str
    value: str | Quantity
    source: Channel
    quantity: Quantity | None = None
    confidence: Decimal | None = None
    span: tuple[int, int] | None = None
    raw_property: str | None = None

    def __post_init__(self) -> None:
        if isinstance(self.value, str) and not self.value:
            raise ValueError("tuple value must be non-empty")
        if self.confidence is not None and not (0 <= self.confidence <= 1):
            raise ValueError(f"confidence out of range: {self.confidence}")
        if self.raw_property == self.property:  # canonical form: only keep when different
            object.__setattr__(self, "raw_property", None)

    def value_text(self) -> str:
        if isinstance(self.value, Quantity):
            unit = self.value.unit
            unit_txt = unit.iri if isinstance(unit, ConceptId) else (unit or "")
            return f"{self.value.magnitude} {unit_txt}".strip()
        return self.value

    def sort_key(self) -> tuple:
        return (self.subject, self.property, self.value_text(), self.source.value)


@dataclass
class TupleSet:
    """All tuples extracted for one subject through one channel (or merged)."""

    subject: str
    tuples: list[Tuple] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        for t in self.tuples:
            if t.subject != self.subject:
                raise ValueError(
                    f"mixed subjects in tuple set: {t.subject!r} != {self.subject!r}"
                )

    def add(self, t: Tuple) -> None:
        if t.subject != self.subject:
            raise ValueError(f"mixed subjects: {t.subject!r} != {self.subject!r}")
        self.tuples.append(t)

    def sorted(self) -> list[Tuple]:
        return sorted(self.tuples, key=Tuple.sort_key)

    def by_property(self) -> dict[str, list[Tuple]]:
        out: dict[str, list[Tuple]] = {}
        for t in self.sorted():
            out.setdefault(t.property, []).append(t)
        return out

    def __len__(self) -> int:
        return len(self.tuples)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TupleSet):
            return NotImplemented
        return self.subject == other.subject and sorted(
            self.tuples, key=Tuple.sort_key
        ) == sorted(other.tuples, key=Tuple.sort_key)


class TupleXmlError(ValueError):
    pass


def _quantity_attrs(q: Quantity) -> str:
    unit = q.unit
    if isinstance(unit, ConceptId):
        unit_txt = unit.iri
    else:
        unit_txt = unit or ""
    out = f" magnitude={quoteattr(str(q.magnitude))}"
    if unit_txt:
        out += f" unit={quoteattr(unit_txt)}"
    if q.approximate:
        out += ' approximate="true"'
    return out


def write_tuples_xml(tuple_set: TupleSet, path: str | Path) -> None:
    """Write a tuple set; element order is sorted by (subject, property,
    value) so identical sets serialize byte-identically."""
    out = io.StringIO()
    out.write('<?xml version="1.0" encoding="utf-8"?>\n')
    out.write(f"<tuples subject={quoteattr(tuple_set.subject)}>\n")
    for t in tuple_set.sorted():
        attrs = f" property={quoteattr(t.property)} source={quoteattr(t.source.value)}"
        if t.raw_property and t.raw_property != t.property:
            attrs += f" raw-property={quoteattr(t.raw_property)}"
        if t.confidence is not None:
            attrs += f" confidence={quoteattr(str(t.confidence))}"
        if t.span is not None:
            attrs += f' span-start="{t.span[0]}" span-end="{t.span[1]}"'
        out.write(f"  <tuple{attrs}>")
        if isinstance(t.value, Quantity):
            out.write(f"<quantity{_quantity_attrs(t.value)}/>")
        else:
            out.write(escape(t.value))
            if t.quantity is not None:
                out.write(f"<quantity{_quantity_attrs(t.quantity)}/>")
        out.write("</tuple>\n")
    out.write("</tuples>\n")
    Path(path).write_text(out.getvalue(), encoding="utf-8")


def _parse_quantity(el: ET.Element) -> Quantity:
    unit_txt = el.get("unit")
    unit: ConceptId | str | None
    if unit_txt and "://" in unit_txt:
        unit = ConceptId(unit_txt)
    else:
        unit = unit_txt
    return Quantity(
        magnitude=Decimal(el.get("magnitude", "0")),
        unit=unit,
        approximate=el.get("approximate") == "true",
    )


def read_tuples_xml(path: str | Path) -> TupleSet:
    """Read a tuple file back; malformed XML raises with line/column."""
    try:
        root = ET.parse(str(path)).getroot()
    except ET.ParseError as exc:
        raise TupleXmlError(f"{path}: malformed tuple XML: {exc}") from exc
    if root.tag != "tuples":
        raise TupleXmlError(f"{path}: root element must be <tuples>")
    subject = root.get("subject", "")
    ts = TupleSet(subject=subject)
    for el in root:
        if el.tag != "tuple":
            raise TupleXmlError(f"{path}: unexpected element <{el.tag}>")
        quantity_el = el.find("quantity")
        text = (el.text or "").strip()
        value: str | Quantity
        quantity = None
        if quantity_el is not None and not text:
            value = _parse_quantity(quantity_el)
        elif quantity_el is not None:
            value = text
            quantity = _parse_quantity(quantity_el)
        else:
            value = text
        span = None
        if el.get("span-start") is not None:
            span = (int(el.get("span-start")), int(el.get("span-end", "0")))
        confidence = el.get("confidence")
        ts.add(Tuple(
            subject=subject,
            property=el.get("property", ""),
            value=value,
            source=Channel(el.get("source", "CARD")),
            quantity=quantity,
            confidence=Decimal(confidence) if confidence else None,
            span=span,
            raw_property=el.get("raw-property"),
        ))
    return ts


def canonicalized(t: Tuple, canonical_property: str, canonical_value: str | None = None) -> Tuple:
    """Copy of a tuple after semantic resolution, keeping raw provenance."""
    return replace(
        t,
        property=canonical_property,
        raw_property=t.raw_property or t.property,
        value=canonical_value if canonical_value is not None else t.value,
    )
