"""Embedded triple store with Turtle and RDF/XML serialization."""

from .graph import (
    DefectReport,
    Graph,
    GraphStats,
    IngestError,
    class_iri,
    prop_iri,
    schema_triples,
)
from .mapping import MappingError, to_triples
from .triples import Literal, Qualifier, Triple, TripleSet

__all__ = [
    "DefectReport",
    "Graph",
    "GraphStats",
    "IngestError",
    "Literal",
    "MappingError",
    "Qualifier",
    "Triple",
    "TripleSet",
    "class_iri",
    "prop_iri",
    "schema_triples",
    "to_triples",
]
