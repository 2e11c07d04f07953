#!/usr/bin/env python3
"""Dual-channel extraction on one fixture page: the recipe card parser and
the mock LLM provider, including the zero-shot multi-word entity failure.

Run from the repo root: python demos/02_extraction.py
"""

from pathlib import Path

from kgforge.extract import (
    MockProvider,
    PromptProfile,
    clean_page_text,
    llm_extract,
    load_site_profiles,
    parse_recipe_card,
)
from kgforge.ontology import load_vocabulary

ROOT = Path(__file__).resolve().parent.parent
SEED = ROOT / "src" / "kgforge" / "seed"

vocab = load_vocabulary(SEED / "vocabulary.ttl")
profiles = load_site_profiles(SEED / "site_profiles.yaml")
provider = MockProvider.from_vocabulary(vocab)

html = (ROOT / "fixtures" / "pages" / "pudina-chutney-sandwich.html").read_text()
profile = profiles["masalajournal.example"]

print("CARD channel (structured recipe card):")
card = parse_recipe_card("demo-entry", html, profile)
for t in card.sorted():
    print(f"  {t.property:20s} = {t.value_text()}")

text = clean_page_text(html, profile)
print("\nLLM channel, zero-shot prompt (head-word segmentation bug):")
zero = PromptProfile.load(SEED / "prompts" / "zero_shot.yaml")
for t in llm_extract("demo-entry", text, zero, provider).sorted():
    print(f"  {t.property:20s} = {t.value_text()}")

print("\nLLM channel, few-shot prompt (multi-word names survive):")
few = PromptProfile.load(SEED / "prompts" / "few_shot.yaml")
for t in llm_extract("demo-entry", text, few, provider).sorted():
    print(f"  {t.property:20s} = {t.value_text()}")
