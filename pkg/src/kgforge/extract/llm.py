"""Provider-backed extraction of the unstructured page text.

The page is cleaned of boilerplate and of the recipe-card region (that is
the other channel); provider responses are validated against the profile's
target schema, with nonconforming fields dropped and recorded as warnings,
never silently coerced.
"""

from __future__ import annotations

from ..ontology.models import Quantity
from .card import DomNode, SiteProfile, parse_html, select
from .providers import ExtractionProvider, PromptProfile, ProviderError
from .tuples import Channel, Tuple, TupleSet


class LlmIncompleteError(RuntimeError):
    """Provider kept failing after retries; the entry stays LLM-incomplete."""


def clean_page_text(html: str, profile: SiteProfile | None = None) -> str:
    """Title plus prose paragraphs, with the recipe-card region (the CARD
    channel's territory) and script/style boilerplate removed."""
    root = parse_html(html)

    card_nodes: set[int] = set()
    if profile is not None:
        for node in select(root, profile.card):
            card_nodes.add(id(node))
            for inner in node.iter_nodes():
                card_nodes.add(id(inner))

    lines: list[str] = []
    titles = select(root, "title")
    if titles:
        lines.append(titles[0].text())

    def in_card(node: DomNode) -> bool:
        return id(node) in card_nodes

    for node in root.iter_nodes():
        if node.tag in ("p", "h1", "h2") and not in_card(node):
            text = node.text()
            if text:
                lines.append(text)
    return "\n\n".join(lines)


def llm_extract(
    entry_id: str,
    page_text: str,
    profile: PromptProfile,
    provider: ExtractionProvider,
    retries: int = 2,
) -> TupleSet:
    """Run one entry's text through the provider; tuples are tagged LLM and
    restricted to the profile's target schema."""
    ts = TupleSet(subject=entry_id)
    if not page_text.strip():
        return ts

    last_error: ProviderError | None = None
    fields = None
    for _ in range(retries + 1):
        try:
            fields = provider.extract(page_text, profile)
            break
        except ProviderError as exc:
            last_error = exc
    if fields is None:
        raise LlmIncompleteError(
            f"entry {entry_id}: provider failed after {retries + 1} attempts: {last_error}"
        )

    for prop in sorted(fields):
        value = fields[prop]
        if prop not in profile.target_schema:
            ts.warnings.append(f"dropped field {prop!r}: not in target schema")
            continue
        if isinstance(value, str):
            values = [value]
        elif isinstance(value, list) and all(isinstance(v, str) for v in value):
            values = value
        elif isinstance(value, (int, float)):
            values = [str(value)]
        else:
            ts.warnings.append(f"dropped field {prop!r}: unexpected shape {type(value).__name__}")
            continue
        for v in values:
            if v.strip():
                ts.add(Tuple(entry_id, prop, v.strip(), Channel.LLM, raw_property=prop))
    return ts
