"""Deterministic recipe-card parsing from stored HTML.

Site profiles are declarative selector configs, one per source domain (the
blogs disagree on markup and field names). The selector language is small:
space-separated simple selectors with descendant semantics, each of
``tag``, ``.class``, ``tag.class``, or ``tag[attr=value]``; a field can pull
an attribute instead of text via ``attr``. Field keys are the *raw* source
property names (``region``, ``style``); semantic resolution maps them to
canonical properties later.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from html.parser import HTMLParser
from pathlib import Path
from urllib.parse import urlparse

import yaml

from ..ontology.concepts import slugify
from ..ontology.models import Quantity
from .tuples import Channel, Tuple, TupleSet

VOID_TAGS = {"meta", "link", "br", "img", "hr", "input", "source"}


class DomNode:
    __slots__ = ("tag", "attrs", "children", "parent")

    def __init__(self, tag: str, attrs: dict[str, str], parent: "DomNode | None") -> None:
        self.tag = tag
        self.attrs = attrs
        self.children: list = []
        self.parent = parent

    def text(self) -> str:
        parts: list[str] = []

        def walk(node) -> None:
            for child in node.children:
                if isinstance(child, str):
                    parts.append(child)
                else:
                    walk(child)

        walk(self)
        return re.sub(r"\s+", " ", "".join(parts)).strip()

    def iter_nodes(self):
        for child in self.children:
            if isinstance(child, DomNode):
                yield child
                yield from child.iter_nodes()

    def classes(self) -> set[str]:
        return set(self.attrs.get("class", "").split())


class _DomBuilder(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.root = DomNode("#document", {}, None)
        self.stack = [self.root]

    def handle_starttag(self, tag, attrs):
        node = DomNode(tag, dict(attrs), self.stack[-1])
        self.stack[-1].children.append(node)
        if tag not in VOID_TAGS:
            self.stack.append(node)

    def handle_startendtag(self, tag, attrs):
        self.stack[-1].children.append(DomNode(tag, dict(attrs), self.stack[-1]))

    def handle_endtag(self, tag):
        for i in range(len(self.stack) - 1, 0, -1):
            if self.stack[i].tag == tag:
                del self.stack[i:]
                break

    def handle_data(self, data):
        if data:
            self.stack[-1].children.append(data)


def parse_html(text: str) -> DomNode:
    builder = _DomBuilder()
    builder.feed(text)
    return builder.root


_SIMPLE = re.compile(
    r"^(?P<tag>[\w#-]+)?(?P<classes>(?:\.[\w-]+)*)(?:\[(?P<attr>[\w-]+)=(?P<val>[^\]]*)\])?$"
)


def _matches(node: DomNode, part: str) -> bool:
    m = _SIMPLE.match(part)
    if not m:
        raise ValueError(f"bad selector part: {part!r}")
    tag = m.group("tag")
    if tag and node.tag != tag:
        return False
    classes = {c for c in (m.group("classes") or "").split(".") if c}
    if classes and not classes <= node.classes():
        return False
    if m.group("attr") is not None and node.attrs.get(m.group("attr")) != m.group("val"):
        return False
    return True


def select(root: DomNode, selector: str) -> list[DomNode]:
    parts = selector.split()
    current = [root]
    for part in parts:
        found: list[DomNode] = []
        for node in current:
            for candidate in node.iter_nodes():
                if _matches(candidate, part):
                    found.append(candidate)
        current = found
    return current


@dataclass
class FieldSpec:
    selector: str
    attr: str | None = None
    all: bool = False
    scope: str = "card"  # card | document


@dataclass
class SiteProfile:
    domain: str
    card: str
    fields: dict[str, FieldSpec] = field(default_factory=dict)
    ingredients: FieldSpec | None = None
    instructions: FieldSpec | None = None
    nutrition: FieldSpec | None = None

    @staticmethod
    def _spec(raw) -> FieldSpec:
        if isinstance(raw, str):
            return FieldSpec(selector=raw)
        return FieldSpec(
            selector=raw["selector"],
            attr=raw.get("attr"),
            all=bool(raw.get("all", False)),
            scope=raw.get("scope", "card"),
        )

    @classmethod
    def from_dict(cls, domain: str, data: dict) -> "SiteProfile":
        return cls(
            domain=domain,
            card=data["card"],
            fields={k: cls._spec(v) for k, v in (data.get("fields") or {}).items()},
            ingredients=cls._spec(data["ingredients"]) if "ingredients" in data else None,
            instructions=cls._spec(data["instructions"]) if "instructions" in data else None,
            nutrition=cls._spec(data["nutrition"]) if "nutrition" in data else None,
        )


def load_site_profiles(path: str | Path) -> dict[str, SiteProfile]:
    data = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
    return {
        domain: SiteProfile.from_dict(domain, profile)
        for domain, profile in (data.get("domains") or {}).items()
    }


def profile_for_url(profiles: dict[str, SiteProfile], url: str) -> SiteProfile | None:
    host = urlparse(url).hostname or ""
    if host in profiles:
        return profiles[host]
    for domain, profile in profiles.items():
        if host.endswith("." + domain):
            return profile
    return None


_AMOUNT = re.compile(r"^\s*([\d.]+)\s*(\w+)?\s*$")


def _parse_amount(text: str) -> Quantity | None:
    m = _AMOUNT.match(text)
    if not m:
        return None
    try:
        magnitude = Decimal(m.group(1))
    except InvalidOperation:
        return None
    return Quantity(magnitude, unit=m.group(2))


def parse_recipe_card(entry_id: str, html: str, profile: SiteProfile) -> TupleSet:
    """Extract CARD-channel tuples from one stored page. Pure function of
    (HTML bytes, profile): identical inputs give identical tuple sets. Pages
    without a card region yield an empty set plus a diagnostic warning."""
    root = parse_html(html)
    ts = TupleSet(subject=entry_id)

    card_nodes = select(root, profile.card)
    if not card_nodes:
        ts.warnings.append(f"no recipe-card region matched {profile.card!r}; page is LLM-only")
        return ts
    card = card_nodes[0]

    def scope_root(spec: FieldSpec) -> DomNode:
        return root if spec.scope == "document" else card

    for raw_property, spec in sorted(profile.fields.items()):
        nodes = select(scope_root(spec), spec.selector)
        if not nodes:
            ts.warnings.append(f"field {raw_property!r}: selector {spec.selector!r} matched nothing")
            continue
        picked = nodes if spec.all else nodes[:1]
        for node in picked:
            value = node.attrs.get(spec.attr, "") if spec.attr else node.text()
            if value:
                ts.add(Tuple(entry_id, raw_property, value, Channel.CARD,
                             raw_property=raw_property))

    if profile.ingredients:
        for node in select(scope_root(profile.ingredients), profile.ingredients.selector):
            line = node.text()
            if line:
                ts.add(Tuple(entry_id, "has_ingredient_raw", line, Channel.CARD,
                             raw_property="has_ingredient_raw"))

    if profile.instructions:
        nodes = select(scope_root(profile.instructions), profile.instructions.selector)
        if nodes:
            text = nodes[0].text()
            if text:
                ts.add(Tuple(entry_id, "instructions", text, Channel.CARD,
                             raw_property="instructions"))
        else:
            ts.warnings.append(f"instructions selector {profile.instructions.selector!r} matched nothing")

    if profile.nutrition:
        for row in select(scope_root(profile.nutrition), profile.nutrition.selector):
            cells = [n.text() for n in select(row, "td")] or [n.text() for n in select(row, "th")]
            if len(cells) < 2:
                continue
            label, amount_text = cells[0], cells[1]
            quantity = _parse_amount(amount_text)
            prop = f"nutrition_{slugify(label)}"
            if label.strip().lower() in ("calories", "energy"):
                ts.add(Tuple(entry_id, "calories",
                             str(quantity.magnitude) if quantity else amount_text,
                             Channel.CARD, raw_property="calories"))
            elif quantity is not None:
                ts.add(Tuple(entry_id, prop, quantity, Channel.CARD, raw_property=prop))
            else:
                ts.warnings.append(f"nutrition row {label!r}: unparseable amount {amount_text!r}")
    return ts
