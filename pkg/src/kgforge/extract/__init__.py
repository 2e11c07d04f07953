"""Dual-channel information extraction: recipe-card parsing and LLM output."""

from .card import SiteProfile, load_site_profiles, parse_recipe_card, profile_for_url
from .llm import LlmIncompleteError, clean_page_text, llm_extract
from .names import canonicalize_names, is_devanagari, script_of
from .providers import (
    ExtractionProvider,
    HttpProvider,
    MockProvider,
    PromptProfile,
    ProviderError,
)
from .tuples import (
    Channel,
    Tuple,
    TupleSet,
    TupleXmlError,
    canonicalized,
    read_tuples_xml,
    write_tuples_xml,
)

__all__ = [
    "Channel",
    "ExtractionProvider",
    "HttpProvider",
    "LlmIncompleteError",
    "MockProvider",
    "PromptProfile",
    "ProviderError",
    "SiteProfile",
    "Tuple",
    "TupleSet",
    "TupleXmlError",
    "canonicalize_names",
    "canonicalized",
    "clean_page_text",
    "is_devanagari",
    "llm_extract",
    "load_site_profiles",
    "parse_recipe_card",
    "profile_for_url",
    "read_tuples_xml",
    "script_of",
    "write_tuples_xml",
]
