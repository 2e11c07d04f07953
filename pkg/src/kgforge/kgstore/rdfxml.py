"""RDF/XML reader/writer (constrained, blank-node-free profile).

The writer emits one ``rdf:Description`` per subject with property child
elements; objects become ``rdf:resource`` references or literals (with
``xml:lang`` or ``rdf:datatype``). The reader additionally accepts typed
node elements, which it folds into ``rdf:type`` triples.
"""

from __future__ import annotations

import io
import re
import xml.etree.ElementTree as ET
from xml.sax.saxutils import escape, quoteattr

from .triples import Literal, Triple, RDF

XML_NS = "http://www.w3.org/XML/1998/namespace"

_KNOWN_PREFIXES = {
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#": "rdf",
    "http://www.w3.org/2000/01/rdf-schema#": "rdfs",
    "http://www.w3.org/2002/07/owl#": "owl",
    "http://www.w3.org/2004/02/skos/core#": "skos",
    "http://www.w3.org/2001/XMLSchema#": "xsd",
}

_NCNAME = re.compile(r"[A-Za-z_][\w.-]*")


class RdfXmlParseError(ValueError):
    pass


def _split_iri(iri: str) -> tuple[str, str]:
    """Split an IRI into (namespace, NCName local part) for element naming."""
    for sep in ("#", "/"):
        idx = iri.rfind(sep)
        if idx >= 0:
            ns, local = iri[: idx + 1], iri[idx + 1:]
            if _NCNAME.fullmatch(local):
                return ns, local
    raise ValueError(f"predicate IRI not expressible in RDF/XML: {iri!r}")


def dumps(triples, extra_prefixes: dict[str, str] | None = None) -> str:
    """Serialize to RDF/XML, deterministically ordered."""
    prefix_of = dict(_KNOWN_PREFIXES)
    for prefix, ns in sorted((extra_prefixes or {}).items()):
        prefix_of.setdefault(ns, prefix)

    by_subject: dict[str, list[Triple]] = {}
    namespaces: set[str] = set()
    for t in triples:
        by_subject.setdefault(t.subject, []).append(t)
        namespaces.add(_split_iri(t.predicate)[0])
    namespaces.add(RDF)

    counter = 0
    for ns in sorted(namespaces):
        if ns not in prefix_of:
            counter += 1
            prefix_of[ns] = f"ns{counter}"
    used = {ns: p for ns, p in prefix_of.items() if ns in namespaces}

    out = io.StringIO()
    out.write('<?xml version="1.0" encoding="utf-8"?>\n')
    out.write("<rdf:RDF")
    for ns, prefix in sorted(used.items(), key=lambda kv: kv[1]):
        out.write(f'\n    xmlns:{prefix}={quoteattr(ns)}')
    out.write(">\n")

    for subject in sorted(by_subject):
        out.write(f"  <rdf:Description rdf:about={quoteattr(subject)}>\n")
        for t in sorted(set(by_subject[subject]), key=Triple.sort_key):
            ns, local = _split_iri(t.predicate)
            name = f"{used[ns]}:{local}"
            obj = t.object
            if isinstance(obj, Literal):
                attrs = ""
                if obj.language:
                    attrs = f" xml:lang={quoteattr(obj.language)}"
                elif obj.datatype:
                    attrs = f" rdf:datatype={quoteattr(obj.datatype)}"
                out.write(f"    <{name}{attrs}>{escape(obj.value)}</{name}>\n")
            else:
                out.write(f"    <{name} rdf:resource={quoteattr(obj)}/>\n")
        out.write("  </rdf:Description>\n")
    out.write("</rdf:RDF>\n")
    return out.getvalue()


def _tag_iri(tag: str) -> str:
    if not tag.startswith("{"):
        raise RdfXmlParseError(f"unqualified element {tag!r}")
    ns, local = tag[1:].split("}", 1)
    return ns + local


def loads(text: str) -> list[Triple]:
    """Parse RDF/XML into a triple list. Malformed XML raises
    :class:`RdfXmlParseError` carrying the underlying line/column."""
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise RdfXmlParseError(f"malformed RDF/XML: {exc}") from exc
    if _tag_iri(root.tag) != RDF + "RDF":
        raise RdfXmlParseError(f"root element is not rdf:RDF: {root.tag!r}")

    triples: list[Triple] = []
    root_lang = root.get(f"{{{XML_NS}}}lang")

    for node in root:
        about = node.get(f"{{{RDF}}}about")
        if about is None:
            raise RdfXmlParseError("node element without rdf:about (blank nodes unsupported)")
        node_iri = _tag_iri(node.tag)
        if node_iri != RDF + "Description":
            triples.append(Triple(about, RDF + "type", node_iri))
        node_lang = node.get(f"{{{XML_NS}}}lang", root_lang)

        for prop in node:
            pred = _tag_iri(prop.tag)
            resource = prop.get(f"{{{RDF}}}resource")
            if resource is not None:
                triples.append(Triple(about, pred, resource))
                continue
            if len(prop) > 0:
                raise RdfXmlParseError(
                    f"nested node elements not supported (property {pred!r})"
                )
            datatype = prop.get(f"{{{RDF}}}datatype")
            lang = prop.get(f"{{{XML_NS}}}lang", node_lang)
            value = prop.text or ""
            if datatype:
                triples.append(Triple(about, pred, Literal(value, datatype=datatype)))
            else:
                triples.append(Triple(about, pred, Literal(value, language=lang)))
    return triples
