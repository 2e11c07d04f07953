"""Extraction providers: complete page text in, structured fields out.

Two implementations ship: a remote HTTP provider (endpoint/model from
config, API key from the environment) and a deterministic rule-based mock
so the whole pipeline runs and tests offline. The mock's entity
segmentation is profile-sensitive on purpose: zero-shot profiles take the
head word of a mention (reproducing the classic multi-word named-entity
failure, "pudina" for "pudina chutney"), few-shot profiles match longest
known n-grams and skip terms the lexicon knows as cookware or techniques.
"""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from ..ontology.concepts import Scheme, normalize_surface
from ..ontology.vocabulary import VocabularyStore


class ProviderError(RuntimeError):
    """Transient provider failure; the caller retries then marks the entry
    LLM-incomplete."""


@dataclass
class PromptProfile:
    name: str
    mode: str  # zero_shot | few_shot
    template: str
    target_schema: list[str]
    exemplars: list[dict] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.mode not in ("zero_shot", "few_shot"):
            raise ValueError(f"unknown prompt mode: {self.mode}")
        if self.mode == "zero_shot" and self.exemplars:
            raise ValueError("zero_shot profiles carry no exemplars")

    def render(self, page_text: str) -> str:
        """Fill the template; unbound placeholders are an error."""
        rendered = self.template.format(
            page_text=page_text,
            schema=", ".join(self.target_schema),
            exemplars=json.dumps(self.exemplars, ensure_ascii=False),
        )
        leftover = re.search(r"\{[a-z_]+\}", rendered)
        if leftover:
            raise ValueError(f"unbound template placeholder {leftover.group(0)}")
        return rendered

    @classmethod
    def load(cls, path: str | Path) -> "PromptProfile":
        data = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
        return cls(
            name=data["name"],
            mode=data["mode"],
            template=data["template"],
            target_schema=[str(p) for p in data["target_schema"]],
            exemplars=data.get("exemplars") or [],
        )


class ExtractionProvider:
    """Interface: structured extraction plus food-name translation."""

    def extract(self, page_text: str, profile: PromptProfile) -> dict:
        raise NotImplementedError

    def translate(self, names: list[str]) -> dict[str, str]:
        raise NotImplementedError


_ARTICLES = {"a", "an", "the", "some", "of", "fresh", "few", "little", "bit"}
_NEED_SENTENCE = re.compile(
    r"[^.!?]*?\byou (?:will |'ll )?need\b([^.!?]*)[.!?]", re.IGNORECASE
)


def _word_in(label: str, text: str) -> bool:
    return f" {label} " in f" {text} "


class MockProvider(ExtractionProvider):
    """Deterministic extractor driven by a lexicon of known labels.

    The lexicon maps a normalized label to its vocabulary scheme; few-shot
    profile exemplars contribute extra entries per call. Build one from a
    vocabulary store with :meth:`from_vocabulary`.
    """

    def __init__(
        self,
        lexicon: dict[str, Scheme] | None = None,
        translations: dict[str, str] | None = None,
    ) -> None:
        self.lexicon = dict(lexicon or {})
        self.translations = {
            normalize_surface(k): v for k, v in (translations or {}).items()
        }

    @classmethod
    def from_vocabulary(cls, vocab: VocabularyStore,
                        translations: dict[str, str] | None = None) -> "MockProvider":
        lexicon: dict[str, Scheme] = {}
        for term in sorted(vocab.terms.values(), key=lambda t: t.id.iri):
            for label in term.all_labels():
                norm = normalize_surface(label.text)
                if norm and norm not in lexicon:
                    lexicon[norm] = term.scheme
        return cls(lexicon, translations)

    # ------------------------------------------------------------ pieces

    @staticmethod
    def _scan_labels(text: str, lexicon: dict[str, Scheme], schemes: set[Scheme]) -> list[str]:
        """Labels of the given schemes in order of first appearance; labels
        contained in a longer found label are dropped."""
        norm_text = normalize_surface(text)
        found: list[tuple[int, str]] = []
        for label, scheme in lexicon.items():
            if scheme not in schemes:
                continue
            pos = (" " + norm_text + " ").find(" " + label + " ")
            if pos >= 0:
                found.append((pos, label))
        found.sort(key=lambda x: (x[0], -len(x[1]), x[1]))
        labels = [l for _, l in found]
        out: list[str] = []
        for label in labels:
            shadowed = any(label != other and _word_in(label, other) for other in labels)
            if not shadowed and label not in out:
                out.append(label)
        return out

    @staticmethod
    def _ingredient_fragments(text: str) -> list[str]:
        fragments: list[str] = []
        for m in _NEED_SENTENCE.finditer(text):
            for frag in re.split(r",| and ", m.group(1)):
                tokens = [t for t in normalize_surface(frag).split() if t]
                while tokens and (tokens[0] in _ARTICLES or tokens[0].isdigit()):
                    tokens.pop(0)
                if tokens:
                    fragments.append(" ".join(tokens))
        return fragments

    @staticmethod
    def _segment(fragment: str, mode: str, lexicon: dict[str, Scheme]) -> str | None:
        if mode == "zero_shot":
            return fragment.split()[0]
        tokens = fragment.split()
        for size in range(len(tokens), 0, -1):  # longest known n-gram wins
            for start in range(0, len(tokens) - size + 1):
                candidate = " ".join(tokens[start:start + size])
                scheme = lexicon.get(candidate)
                if scheme is None:
                    continue
                if scheme in (Scheme.COOKWARE, Scheme.COOKING_TECHNIQUE):
                    return None  # equipment mentioned in the shopping list
                return candidate
        return fragment

    # -------------------------------------------------------------- api

    def extract(self, page_text: str, profile: PromptProfile) -> dict:
        profile.render(page_text)  # validates placeholders; mock ignores the prompt
        lexicon = dict(self.lexicon)
        if profile.mode == "few_shot":
            for exemplar in profile.exemplars:
                for entity in exemplar.get("entities", []):
                    lexicon.setdefault(
                        normalize_surface(entity["surface"]), Scheme(entity["scheme"])
                    )

        lines = [l.strip() for l in page_text.splitlines() if l.strip()]
        title = lines[0] if lines else ""
        name = re.split(r"\s+[|–—-]\s+", title)[0]
        name = re.sub(r"\s+recipe$", "", name, flags=re.IGNORECASE).strip()

        fields: dict = {}
        if name:
            fields["name"] = name

        serves = re.search(r"\bserves (\d+)\b", page_text, re.IGNORECASE)
        if serves:
            fields["serving_size"] = serves.group(1)

        cuisines = self._scan_labels(page_text, lexicon, {Scheme.CUISINE})
        if cuisines:
            fields["cuisine"] = cuisines[0]

        ingredients: list[str] = []
        for fragment in self._ingredient_fragments(page_text):
            segmented = self._segment(fragment, profile.mode, lexicon)
            if segmented and segmented not in ingredients:
                ingredients.append(segmented)
        if ingredients:
            fields["has_ingredient"] = ingredients

        cooking = self._scan_labels(
            page_text, lexicon, {Scheme.COOKING_TECHNIQUE, Scheme.COOKWARE}
        )
        if cooking:
            fields["has_cooking_char"] = cooking

        diet = self._scan_labels(
            page_text, lexicon,
            {Scheme.DIETARY_PRACTICE, Scheme.ALLERGEN_LABEL, Scheme.HEALTH_LABEL},
        )
        if diet:
            fields["diet_label"] = diet
        return fields

    def translate(self, names: list[str]) -> dict[str, str]:
        out = {}
        for name in names:
            hit = self.translations.get(normalize_surface(name))
            if hit:
                out[name] = hit
        return out


class _RateLimiter:
    """Token-bucket limiter shared across worker threads."""

    def __init__(self, per_second: float, burst: int = 2) -> None:
        import threading
        import time

        self._lock = threading.Lock()
        self._per_second = per_second
        self._capacity = float(burst)
        self._tokens = float(burst)
        self._last = time.monotonic()
        self._time = time
        self._sleep = time.sleep

    def acquire(self) -> None:
        if self._per_second <= 0:
            return
        while True:
            with self._lock:
                now = self._time.monotonic()
                self._tokens = min(
                    self._capacity, self._tokens + (now - self._last) * self._per_second
                )
                self._last = now
                if self._tokens >= 1:
                    self._tokens -= 1
                    return
                wait = (1 - self._tokens) / self._per_second
            self._sleep(wait)


class HttpProvider(ExtractionProvider):
    """Remote LLM endpoint speaking a small JSON contract:
    POST {model, prompt} -> {"fields": {...}} and
    POST {model, translate: [...]} -> {"translations": {...}}.
    The API key comes from the environment, never from config files; calls
    from concurrent workers share one rate limiter."""

    def __init__(self, endpoint: str, model: str,
                 api_key_env: str = "KGFORGE_PROVIDER_KEY", timeout: float = 30.0,
                 requests_per_second: float = 2.0) -> None:
        self.endpoint = endpoint
        self.model = model
        self.api_key_env = api_key_env
        self.timeout = timeout
        self._limiter = _RateLimiter(requests_per_second)

    def _post(self, payload: dict) -> dict:
        import requests

        self._limiter.acquire()
        headers = {}
        key = os.environ.get(self.api_key_env)
        if key:
            headers["Authorization"] = f"Bearer {key}"
        try:
            response = requests.post(
                self.endpoint, json=payload, headers=headers, timeout=self.timeout
            )
        except requests.RequestException as exc:
            raise ProviderError(f"provider request failed: {exc}") from exc
        if response.status_code != 200:
            raise ProviderError(f"provider returned HTTP {response.status_code}")
        try:
            return response.json()
        except ValueError as exc:
            raise ProviderError(f"provider returned non-JSON body: {exc}") from exc

    def extract(self, page_text: str, profile: PromptProfile) -> dict:
        body = self._post({"model": self.model, "prompt": profile.render(page_text)})
        fields = body.get("fields")
        if not isinstance(fields, dict):
            raise ProviderError("provider response missing 'fields' object")
        return fields

    def translate(self, names: list[str]) -> dict[str, str]:
        body = self._post({"model": self.model, "translate": names})
        translations = body.get("translations")
        return translations if isinstance(translations, dict) else {}
