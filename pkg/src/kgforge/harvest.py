"""Crawling and local corpus storage.

Every stored page keeps its provenance: source URL, recipe name and
category, blogpost timestamp, scraping timestamp, and the content hash of
the stored HTML. Offline mode replays a bundled fixture map byte-for-byte
and never opens a network connection; live mode is polite (per-host delay,
robots.txt, bounded retries).
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import time
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from urllib.parse import urlparse, urlunparse

from .clock import SystemClock, isoformat


class FetchError(RuntimeError):
    def __init__(self, message: str, attempts: int = 1, retryable: bool = False) -> None:
        super().__init__(message)
        self.attempts = attempts
        self.retryable = retryable


class CorpusError(RuntimeError):
    pass


def canonical_url(url: str) -> str:
    parts = urlparse(url)
    if not parts.scheme or not parts.netloc:
        raise ValueError(f"not an absolute URL: {url!r}")
    path = parts.path.rstrip("/") or "/"
    return urlunparse((parts.scheme.lower(), parts.netloc.lower(), path, "", parts.query, ""))


def entry_id_for(url: str) -> str:
    return hashlib.sha256(canonical_url(url).encode("utf-8")).hexdigest()[:16]


def content_digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


@dataclass(frozen=True)
class PageMeta:
    source_url: str
    recipe_name: str
    recipe_category: str
    scraping_timestamp: str
    content_hash: str
    blogpost_timestamp: str | None = None

    def __post_init__(self) -> None:
        if self.blogpost_timestamp:
            blog = datetime.fromisoformat(self.blogpost_timestamp)
            scraped = datetime.fromisoformat(self.scraping_timestamp.replace("Z", "+00:00"))
            if blog.tzinfo is not None and scraped < blog:
                raise ValueError(
                    f"scraping_timestamp {self.scraping_timestamp} precedes "
                    f"blogpost_timestamp {self.blogpost_timestamp}"
                )

    def to_dict(self) -> dict:
        out = {
            "source_url": self.source_url,
            "recipe_name": self.recipe_name,
            "recipe_category": self.recipe_category,
            "blogpost_timestamp": self.blogpost_timestamp,
            "scraping_timestamp": self.scraping_timestamp,
            "content_hash": self.content_hash,
        }
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "PageMeta":
        return cls(
            source_url=data["source_url"],
            recipe_name=data["recipe_name"],
            recipe_category=data["recipe_category"],
            blogpost_timestamp=data.get("blogpost_timestamp"),
            scraping_timestamp=data["scraping_timestamp"],
            content_hash=data["content_hash"],
        )


@dataclass(frozen=True)
class RawPage:
    url: str
    final_url: str
    content: bytes
    fetched_at: str


@dataclass
class CorpusEntry:
    id: str
    html_path: Path
    meta: PageMeta

    def read_html(self) -> bytes:
        return self.html_path.read_bytes()

    def verify(self) -> bool:
        return content_digest(self.read_html()) == self.meta.content_hash


@dataclass
class CorpusListing:
    entries: list[CorpusEntry] = field(default_factory=list)
    corrupt: list[tuple[str, str]] = field(default_factory=list)  # (path, problem)


_META_PUBLISH = re.compile(
    rb'<meta\s+name="(?:publish-date|post-date)"\s+content="([^"]+)"', re.IGNORECASE
)


def sniff_blogpost_timestamp(content: bytes) -> str | None:
    m = _META_PUBLISH.search(content)
    return m.group(1).decode("utf-8", "replace") if m else None


class Fetcher:
    """Fetches pages in ``offline`` (fixture replay) or ``live`` mode.

    ``transport`` is the live HTTP callable (url -> (status, bytes, final
    url)); tests inject a poisoned transport to prove offline mode never
    touches the network.
    """

    def __init__(
        self,
        mode: str = "offline",
        fixture_map: str | Path | None = None,
        clock=None,
        transport=None,
        retries: int = 2,
        rate_per_host: float = 1.0,
        user_agent: str = "kgforge-crawler/0.1 (+research; contact site owner on issues)",
        respect_robots: bool = True,
    ) -> None:
        if mode not in ("live", "offline"):
            raise ValueError(f"unknown fetch mode: {mode}")
        self.mode = mode
        self.clock = clock or SystemClock()
        self.retries = retries
        self.rate_per_host = rate_per_host
        self.user_agent = user_agent
        self.respect_robots = respect_robots
        self._transport = transport
        self._last_fetch: dict[str, float] = {}
        self._robots: dict[str, object] = {}
        self._fixtures: dict[str, dict] = {}
        self._fixture_root = Path(".")
        if fixture_map is not None:
            path = Path(fixture_map)
            self._fixture_root = path.parent
            data = json.loads(path.read_text(encoding="utf-8"))
            self._fixtures = {canonical_url(u): spec for u, spec in data.items()}
        elif mode == "offline":
            raise ValueError("offline mode requires a fixture map")

    # ------------------------------------------------------------- fixtures

    def fixture_info(self, url: str) -> dict | None:
        return self._fixtures.get(canonical_url(url))

    def seed_urls(self) -> list[str]:
        return sorted(self._fixtures)

    # --------------------------------------------------------------- fetch

    def fetch_page(self, url: str) -> RawPage:
        if self.mode == "offline":
            return self._fetch_offline(url)
        return self._fetch_live(url)

    def _fetch_offline(self, url: str) -> RawPage:
        spec = self._fixtures.get(canonical_url(url))
        if spec is None:
            raise FetchError(f"no fixture mapped for {url}", retryable=False)
        path = self._fixture_root / spec["file"]
        if not path.exists():
            raise FetchError(f"fixture file missing: {path}", retryable=False)
        return RawPage(
            url=url,
            final_url=url,
            content=path.read_bytes(),
            fetched_at=isoformat(self.clock.now()),
        )

    def _default_transport(self, url: str):
        import requests

        response = requests.get(
            url, headers={"User-Agent": self.user_agent}, timeout=30, allow_redirects=True
        )
        return response.status_code, response.content, response.url

    def _robots_allows(self, url: str) -> bool:
        if not self.respect_robots:
            return True
        from urllib import robotparser

        host = urlparse(url).netloc
        parser = self._robots.get(host)
        if parser is None:
            parser = robotparser.RobotFileParser()
            robots_url = f"{urlparse(url).scheme}://{host}/robots.txt"
            try:
                status, body, _ = (self._transport or self._default_transport)(robots_url)
                if status == 200:
                    parser.parse(body.decode("utf-8", "replace").splitlines())
                else:
                    parser.allow_all = True
            except Exception:
                parser.allow_all = True
            self._robots[host] = parser
        return parser.can_fetch(self.user_agent, url)

    def _politeness_wait(self, url: str) -> None:
        if self.rate_per_host <= 0:
            return
        host = urlparse(url).netloc
        min_gap = 1.0 / self.rate_per_host
        last = self._last_fetch.get(host)
        if last is not None:
            elapsed = time.monotonic() - last
            if elapsed < min_gap:
                time.sleep(min_gap - elapsed)
        self._last_fetch[host] = time.monotonic()

    def _fetch_live(self, url: str) -> RawPage:
        if not self._robots_allows(url):
            raise FetchError(f"robots.txt disallows {url}", retryable=False)
        transport = self._transport or self._default_transport
        attempts = 0
        last_problem = ""
        while attempts <= self.retries:
            attempts += 1
            self._politeness_wait(url)
            try:
                status, content, final_url = transport(url)
            except Exception as exc:
                last_problem = str(exc)
                continue
            if 200 <= status < 300:
                return RawPage(
                    url=url,
                    final_url=final_url,
                    content=content,
                    fetched_at=isoformat(self.clock.now()),
                )
            last_problem = f"HTTP {status}"
        raise FetchError(
            f"failed to fetch {url} after {attempts} attempts: {last_problem}",
            attempts=attempts,
            retryable=True,
        )


def store_page(
    corpus_dir: str | Path,
    page: RawPage,
    recipe_name: str,
    recipe_category: str,
    blogpost_timestamp: str | None = None,
) -> CorpusEntry:
    """Write HTML once plus an atomic JSON metadata sidecar. Re-storing
    identical content is a no-op returning the existing entry."""
    if not page.content:
        raise CorpusError(f"refusing to store empty page for {page.url}")
    corpus_dir = Path(corpus_dir)
    corpus_dir.mkdir(parents=True, exist_ok=True)
    entry_id = entry_id_for(page.url)
    html_path = corpus_dir / f"{entry_id}.html"
    meta_path = corpus_dir / f"{entry_id}.meta.json"
    digest = content_digest(page.content)

    if blogpost_timestamp is None:
        blogpost_timestamp = sniff_blogpost_timestamp(page.content)

    if html_path.exists() and meta_path.exists():
        existing = _read_entry(corpus_dir, entry_id)
        if existing.meta.content_hash == digest:
            return existing

    html_path.write_bytes(page.content)
    meta = PageMeta(
        source_url=page.url,
        recipe_name=recipe_name,
        recipe_category=recipe_category,
        blogpost_timestamp=blogpost_timestamp,
        scraping_timestamp=page.fetched_at,
        content_hash=digest,
    )
    tmp_path = meta_path.with_suffix(".json.tmp")
    tmp_path.write_text(
        json.dumps(meta.to_dict(), indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    os.replace(tmp_path, meta_path)
    entry = CorpusEntry(id=entry_id, html_path=html_path, meta=meta)
    if not entry.verify():
        raise CorpusError(f"integrity check failed after store: {entry_id}")
    return entry


def _read_entry(corpus_dir: Path, entry_id: str) -> CorpusEntry:
    meta_path = corpus_dir / f"{entry_id}.meta.json"
    html_path = corpus_dir / f"{entry_id}.html"
    meta = PageMeta.from_dict(json.loads(meta_path.read_text(encoding="utf-8")))
    return CorpusEntry(id=entry_id, html_path=html_path, meta=meta)


def list_corpus(
    corpus_dir: str | Path,
    category: str | None = None,
    source: str | None = None,
) -> CorpusListing:
    """Deterministic listing (entry-id order). Filters are conjunctive;
    unreadable sidecars are reported as corrupt, never silently skipped."""
    corpus_dir = Path(corpus_dir)
    listing = CorpusListing()
    if not corpus_dir.exists():
        raise CorpusError(f"corpus directory missing: {corpus_dir}")
    for meta_path in sorted(corpus_dir.glob("*.meta.json")):
        entry_id = meta_path.name[: -len(".meta.json")]
        try:
            entry = _read_entry(corpus_dir, entry_id)
            if not entry.html_path.exists():
                raise CorpusError(f"html file missing for {entry_id}")
        except Exception as exc:
            listing.corrupt.append((str(meta_path), str(exc)))
            continue
        if category is not None and entry.meta.recipe_category != category:
            continue
        if source is not None and source not in entry.meta.source_url:
            continue
        listing.entries.append(entry)
    return listing
