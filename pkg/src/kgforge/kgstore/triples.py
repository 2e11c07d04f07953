"""Triple model for the embedded graph store.

Nodes are either absolute IRIs (plain strings) or :class:`Literal` values.
Blank nodes are deliberately unsupported: qualifier nodes get deterministic
IRIs so serialization round-trips compare as plain triple-set equality.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from decimal import Decimal

XSD = "http://www.w3.org/2001/XMLSchema#"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
OWL = "http://www.w3.org/2002/07/owl#"
SKOS = "http://www.w3.org/2004/02/skos/core#"

RDF_TYPE = RDF + "type"
RDF_STATEMENT = RDF + "Statement"
RDF_SUBJECT = RDF + "subject"
RDF_PREDICATE = RDF + "predicate"
RDF_OBJECT = RDF + "object"


@dataclass(frozen=True)
class Literal:
    """An RDF literal: lexical form plus either a language tag or a datatype."""

    value: str
    language: str | None = None
    datatype: str | None = None

    def __post_init__(self) -> None:
        if self.language and self.datatype:
            raise ValueError("literal cannot carry both language and datatype")

    @classmethod
    def decimal(cls, value: Decimal | int | str) -> "Literal":
        return cls(str(value), datatype=XSD + "decimal")

    @classmethod
    def integer(cls, value: int) -> "Literal":
        return cls(str(value), datatype=XSD + "integer")

    @classmethod
    def boolean(cls, value: bool) -> "Literal":
        return cls("true" if value else "false", datatype=XSD + "boolean")

    def sort_key(self) -> tuple:
        return (1, self.value, self.language or "", self.datatype or "")


Node = "str | Literal"


def node_sort_key(node) -> tuple:
    if isinstance(node, Literal):
        return node.sort_key()
    return (0, node, "", "")


@dataclass(frozen=True)
class Triple:
    subject: str
    predicate: str
    object: "str | Literal"

    def __post_init__(self) -> None:
        for iri in (self.subject, self.predicate):
            if "://" not in iri:
                raise ValueError(f"subject/predicate must be an absolute IRI: {iri!r}")
        if isinstance(self.object, str) and "://" not in self.object:
            raise ValueError(
                f"IRI object must be absolute (wrap literals in Literal): {self.object!r}"
            )

    def sort_key(self) -> tuple:
        return (self.subject, self.predicate, node_sort_key(self.object))


@dataclass(frozen=True)
class Qualifier:
    """A reified annotation on one triple (e.g. the measured quantity on a
    has_ingredient edge). ``properties`` are (predicate IRI, object) pairs."""

    target: Triple
    properties: tuple

    def node_iri(self, base: str) -> str:
        """Deterministic IRI for the reification node."""
        t = self.target
        obj = t.object.value if isinstance(t.object, Literal) else t.object
        digest = hashlib.sha1(
            "\x1f".join([t.subject, t.predicate, obj]).encode("utf-8")
        ).hexdigest()[:16]
        return f"{base.rstrip('/')}/qualifier/{digest}"

    def to_triples(self, base: str) -> list[Triple]:
        node = self.node_iri(base)
        out = [
            Triple(node, RDF_TYPE, RDF_STATEMENT),
            Triple(node, RDF_SUBJECT, self.target.subject),
            Triple(node, RDF_PREDICATE, self.target.predicate),
            Triple(node, RDF_OBJECT, self.target.object),
        ]
        out.extend(Triple(node, p, o) for p, o in self.properties)
        return out


@dataclass
class TripleSet:
    """Triples plus reification qualifiers, the unit of graph ingestion."""

    triples: list[Triple] = field(default_factory=list)
    qualifiers: list[Qualifier] = field(default_factory=list)

    def __post_init__(self) -> None:
        have = set(self.triples)
        for q in self.qualifiers:
            if q.target not in have:
                raise ValueError(f"dangling qualifier: no such triple {q.target}")

    def expanded(self, base: str) -> list[Triple]:
        """All triples including reified qualifier triples, sorted."""
        out = list(self.triples)
        for q in self.qualifiers:
            out.extend(q.to_triples(base))
        return sorted(set(out), key=Triple.sort_key)

    def __len__(self) -> int:
        return len(self.triples)
