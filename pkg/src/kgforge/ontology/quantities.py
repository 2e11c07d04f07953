"""Quantity parsing for ingredient lines.

Grammar: ``<number | unicode-fraction | range> <unit-word>? <surface>``.
Ranges keep the midpoint and turn approximate; bare linguistic measures
("a little", "some", "a handful of") become approximate quantities that
never gram-normalize. Numbers with no recognized unit word default to the
"piece" count unit ("2 onions").
"""

from __future__ import annotations

import re
import unicodedata
from decimal import Decimal
from typing import TYPE_CHECKING

from .concepts import ConceptId, Scheme
from .models import Quantity

if TYPE_CHECKING:
    from .vocabulary import VocabularyStore

_VULGAR = re.compile(r"[¼-¾⅐-⅞]")

_LINGUISTIC_PREFIXES = (
    "a little",
    "a pinch of",
    "a pinch",
    "a handful of",
    "a handful",
    "a few",
    "a dash of",
    "some",
)

_NUMBER = r"\d+(?:\.\d+)?(?:\s*/\s*\d+)?"
_RANGE_SEP = r"(?:-|–|—|\s+to\s+)"


def _to_decimal(token: str) -> Decimal:
    token = token.strip()
    if "/" in token:
        num, den = token.split("/")
        return Decimal(num.strip()) / Decimal(den.strip())
    return Decimal(token)


def _consume_number(text: str) -> tuple[Decimal | None, bool, str]:
    """Leading numeric value: returns (value, approximate, rest).
    Handles decimals, ascii and unicode fractions, mixed numbers, ranges."""
    text = text.strip()
    m = re.match(rf"({_NUMBER})\s*{_RANGE_SEP}\s*({_NUMBER})\b", text)
    if m:
        lo, hi = _to_decimal(m.group(1)), _to_decimal(m.group(2))
        return (lo + hi) / 2, True, text[m.end():].strip()

    value = Decimal(0)
    matched = False
    while True:
        m = re.match(rf"({_NUMBER})\s*", text)
        if m and "/" in m.group(1):
            value += _to_decimal(m.group(1))
            text = text[m.end():]
            matched = True
            break
        if m:
            value += Decimal(m.group(1))
            text = text[m.end():]
            matched = True
            continue
        m = _VULGAR.match(text)
        if m:
            value += Decimal(str(unicodedata.numeric(m.group(0))))
            text = text[m.end():].lstrip()
            matched = True
            break
        break
    if not matched:
        return None, False, text
    return value, False, text.strip()


def parse_ingredient_line(
    line: str, vocab: "VocabularyStore"
) -> tuple[Quantity, str]:
    """Split one ingredient line into (quantity, ingredient surface).

    The unit word, when present, is resolved against the unit scheme of the
    vocabulary (plural forms tolerated). Lines with no parseable amount
    become approximate single quantities over the whole surface.
    """
    raw = line.strip()
    lowered = raw.lower()

    for prefix in _LINGUISTIC_PREFIXES:
        if lowered.startswith(prefix + " "):
            surface = raw[len(prefix):].strip()
            return Quantity(Decimal(1), unit=prefix, approximate=True), surface
    m = re.match(r"^(.*?)[,\s]+to taste$", raw, re.IGNORECASE)
    if m:
        return Quantity(Decimal(1), unit="to taste", approximate=True), m.group(1).strip()

    value, approximate, rest = _consume_number(raw)
    if value is None:
        return Quantity(Decimal(1), unit=None, approximate=True), raw

    unit_id, rest = _take_unit_word(rest, vocab)
    if unit_id is None:
        unit_id = _unit_concept(vocab, "piece")
    surface = rest.strip(" ,.-")
    if not surface:
        surface = raw
    return Quantity(value, unit=unit_id, approximate=approximate), surface


def _take_unit_word(text: str, vocab: "VocabularyStore") -> tuple[ConceptId | None, str]:
    m = re.match(r"([^\W\d_]+)\s*(?:of\s+)?(.*)$", text, re.UNICODE | re.DOTALL)
    if not m:
        return None, text
    word = m.group(1)
    for candidate in (word, word.rstrip("s") if word.endswith("s") else None):
        if not candidate:
            continue
        hits = vocab.lookup_term(candidate, scheme=Scheme.UNIT)
        if hits:
            return hits[0][0], m.group(2)
    return None, text


def _unit_concept(vocab: "VocabularyStore", name: str) -> ConceptId | str:
    hits = vocab.lookup_term(name, scheme=Scheme.UNIT)
    return hits[0][0] if hits else name
