"""Canonicalization of food-term surfaces to English vocabulary names.

The alias table (vocabulary pref/alt labels, including Devanagari aliases)
is consulted first; the translation provider only sees misses. Surfaces
neither side knows come back unresolved; they become curation flags
downstream, never pipeline aborts.
"""

from __future__ import annotations

import unicodedata

from ..ontology.concepts import Scheme
from ..ontology.vocabulary import VocabularyStore
from .providers import ExtractionProvider, ProviderError


def is_devanagari(surface: str) -> bool:
    return any("ऀ" <= c <= "ॿ" for c in surface)


def script_of(surface: str) -> str:
    """Rough script classification for code-mixing diagnostics."""
    for c in surface:
        if c.isalpha():
            name = unicodedata.name(c, "")
            if name.startswith("DEVANAGARI"):
                return "devanagari"
            if "LATIN" not in name:
                return "other"
    return "latin"


def canonicalize_names(
    surfaces: list[tuple[str, str | None]] | list[str],
    vocab: VocabularyStore,
    provider: ExtractionProvider | None = None,
    scheme: Scheme | None = None,
) -> list[tuple[str, str, str]]:
    """Map each surface to its canonical English name.

    Returns (surface, canonical name, method) rows where method is
    ``alias_table``, ``provider``, or ``unresolved`` (canonical == surface).
    Devanagari surfaces route through the same alias table.
    """
    items: list[tuple[str, str | None]] = [
        (s, None) if isinstance(s, str) else (s[0], s[1]) for s in surfaces
    ]
    results: list[tuple[str, str, str]] = []
    misses: list[int] = []

    for index, (surface, language) in enumerate(items):
        hits = vocab.lookup_term(surface, scheme=scheme, language=language)
        if not hits and language is not None:
            hits = vocab.lookup_term(surface, scheme=scheme)
        if hits:
            term = vocab.get(hits[0][0])
            results.append((surface, term.pref_label.text, "alias_table"))
        else:
            results.append((surface, surface, "unresolved"))
            misses.append(index)

    if provider is not None and misses:
        try:
            translations = provider.translate([items[i][0] for i in misses])
        except ProviderError:
            translations = {}
        for index in misses:
            surface = items[index][0]
            translated = translations.get(surface)
            if not translated:
                continue
            hits = vocab.lookup_term(translated, scheme=scheme)
            if hits:
                term = vocab.get(hits[0][0])
                results[index] = (surface, term.pref_label.text, "provider")
            else:
                results[index] = (surface, translated, "provider")
    return results
