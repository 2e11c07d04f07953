"""Pipeline orchestration over a workspace directory.

A workspace is one config file plus the artifacts each stage writes under
it: corpus/ (crawl), tuples/ (extract), resolved/ (resolve), scores/ and
flags.jsonl (score), graph.owl and reports/ (ingest, stats). Stages
validate their inputs, are restartable (already-processed entries are
skipped by content hash + config hash), and record the config hash in every
report so runs stay comparable.
"""

from __future__ import annotations

import hashlib
import json
import shutil
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from pathlib import Path

import yaml

from .clock import FixedClock, SystemClock, isoformat
from .extract import (
    Channel,
    HttpProvider,
    LlmIncompleteError,
    MockProvider,
    PromptProfile,
    Tuple,
    TupleSet,
    clean_page_text,
    llm_extract,
    load_site_profiles,
    parse_recipe_card,
    profile_for_url,
    read_tuples_xml,
    write_tuples_xml,
)
from .harvest import Fetcher, FetchError, list_corpus, store_page
from .kgstore import Graph, Triple, TripleSet as KgTripleSet, prop_iri, to_triples
from .kgstore.mapping import term_to_triples
from .kgstore.triples import Literal, RDF_TYPE
from .kgstore.graph import class_iri
from .ontology import (
    ConceptId,
    CookingCharacteristics,
    IngredientStore,
    IngredientUsage,
    NutritionProfile,
    Quantity,
    Recipe,
    Scheme,
    load_rules,
    load_vocabulary,
    normalize_surface,
    parse_ingredient_line,
    slugify,
)
from .resolve import MinHashConfig, PropertyMap, Unresolved, cluster_entities, resolve_entity
from .soundness import (
    Flag,
    candidate_tuples,
    flag_inconsistencies,
    score_tuples,
    write_flag_queue,
)

STAGES = ["crawl", "extract", "resolve", "score", "ingest"]


class StageError(RuntimeError):
    pass


class PendingCurationError(RuntimeError):
    """Raised when ingest would run over open flags without permission."""


@dataclass
class StageReport:
    stage: str
    counts: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    config_hash: str = ""

    def to_dict(self) -> dict:
        return {
            "stage": self.stage,
            "counts": dict(sorted(self.counts.items())),
            "warnings": list(self.warnings),
            "config_hash": self.config_hash,
        }


DEFAULT_CONFIG = {
    "base_iri": "https://kgforge.example.org",
    "mode": "offline",
    "seed_list": "seeds.txt",
    "fixture_map": None,
    "vocabulary": "vocabulary.ttl",
    "rules": "rules.yaml",
    "property_map": "property_map.yaml",
    "site_profiles": "site_profiles.yaml",
    "ingredients": "ingredients.json",
    "prompt_profile": "prompts/zero_shot.yaml",
    "corpus_dir": "corpus",
    "tuples_dir": "tuples",
    "resolved_dir": "resolved",
    "scores_dir": "scores",
    "reports_dir": "reports",
    "graph_path": "graph.owl",
    "flags_path": "flags.jsonl",
    "audit_path": "audit.jsonl",
    "lsh": {"num_hashes": 128, "bands": 32, "rows": 4, "shingle_size": 3,
            "seed": 7, "merge_threshold": 0.6},
    "provider": {"kind": "mock"},
    "crawl": {"rate_per_host": 1.0, "retries": 2},
    "clock": None,  # ISO instant for reproducible runs; null = wall clock
}


@dataclass
class WorkspaceConfig:
    root: Path
    values: dict

    @classmethod
    def load(cls, workspace: str | Path, config_file: str | Path | None = None) -> "WorkspaceConfig":
        root = Path(workspace).resolve()
        path = Path(config_file) if config_file else root / "kgforge.yaml"
        values = dict(DEFAULT_CONFIG)
        if path.exists():
            loaded = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
            for key, value in loaded.items():
                if isinstance(value, dict) and isinstance(values.get(key), dict):
                    merged = dict(values[key])
                    merged.update(value)
                    values[key] = merged
                else:
                    values[key] = value
        return cls(root=root, values=values)

    def path(self, key: str) -> Path:
        value = self.values[key]
        if value is None:
            raise StageError(f"config key {key!r} is not set")
        p = Path(value)
        return p if p.is_absolute() else self.root / p

    def config_hash(self) -> str:
        canon = json.dumps(self.values, sort_keys=True, ensure_ascii=False, default=str)
        return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:16]


class Workspace:
    """Loads shared resources lazily and runs pipeline stages."""

    def __init__(self, config: WorkspaceConfig) -> None:
        self.config = config
        self.root = config.root
        self._cache: dict = {}

    # ------------------------------------------------------------ resources

    @property
    def base(self) -> str:
        return self.config.values["base_iri"].rstrip("/")

    def clock(self):
        fixed = self.config.values.get("clock")
        if "clock" not in self._cache:
            self._cache["clock"] = FixedClock(fixed) if fixed else SystemClock()
        return self._cache["clock"]

    def vocab(self, reload: bool = False):
        if reload or "vocab" not in self._cache:
            self._cache["vocab"] = load_vocabulary(self.config.path("vocabulary"), base=self.base)
        return self._cache["vocab"]

    def ingredient_db(self) -> IngredientStore:
        if "ingredient_db" not in self._cache:
            self._cache["ingredient_db"] = IngredientStore.from_json(
                self.config.path("ingredients"), base=self.base
            )
        return self._cache["ingredient_db"]

    def rules(self):
        if "rules" not in self._cache:
            self._cache["rules"] = load_rules(self.config.path("rules"), base=self.base)
        return self._cache["rules"]

    def property_map(self) -> PropertyMap:
        if "property_map" not in self._cache:
            self._cache["property_map"] = PropertyMap.load(self.config.path("property_map"))
        return self._cache["property_map"]

    def site_profiles(self):
        if "site_profiles" not in self._cache:
            self._cache["site_profiles"] = load_site_profiles(self.config.path("site_profiles"))
        return self._cache["site_profiles"]

    def prompt_profile(self) -> PromptProfile:
        if "prompt_profile" not in self._cache:
            self._cache["prompt_profile"] = PromptProfile.load(self.config.path("prompt_profile"))
        return self._cache["prompt_profile"]

    def provider(self):
        if "provider" not in self._cache:
            spec = self.config.values.get("provider") or {}
            kind = spec.get("kind", "mock")
            if kind == "mock":
                self._cache["provider"] = MockProvider.from_vocabulary(
                    self.vocab(), translations=spec.get("translations"),
                )
            elif kind == "http":
                self._cache["provider"] = HttpProvider(
                    endpoint=spec["endpoint"],
                    model=spec.get("model", "default"),
                    api_key_env=spec.get("api_key_env", "KGFORGE_PROVIDER_KEY"),
                )
            else:
                raise StageError(f"unknown provider kind {kind!r}")
        return self._cache["provider"]

    def minhash_config(self) -> MinHashConfig:
        spec = self.config.values.get("lsh") or {}
        return MinHashConfig(
            num_hashes=int(spec.get("num_hashes", 128)),
            bands=int(spec.get("bands", 32)),
            rows=int(spec.get("rows", 4)),
            shingle_size=int(spec.get("shingle_size", 3)),
            seed=int(spec.get("seed", 7)),
            merge_threshold=float(spec.get("merge_threshold", 0.6)),
        )

    def invalidate(self, *keys: str) -> None:
        for key in keys:
            self._cache.pop(key, None)

    # ------------------------------------------------------------- helpers

    def _report(self, stage: str) -> StageReport:
        return StageReport(stage=stage, config_hash=self.config.config_hash())

    def _write_report(self, report: StageReport) -> None:
        reports = self.config.path("reports_dir")
        reports.mkdir(parents=True, exist_ok=True)
        (reports / f"{report.stage}.json").write_text(
            json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )

    def corpus_entries(self):
        from .harvest import CorpusError

        try:
            return list_corpus(self.config.path("corpus_dir"))
        except CorpusError as exc:
            raise StageError(f"{exc}: run the crawl stage first") from exc

    # ---------------------------------------------------------------- init

    def init_workspace(self, seed_dir: str | Path | None = None,
                       overwrite: bool = False) -> StageReport:
        """Scaffold a workspace from the packaged seed data."""
        report = self._report("init")
        seed = Path(seed_dir) if seed_dir else Path(__file__).parent / "seed"
        self.root.mkdir(parents=True, exist_ok=True)
        copied = 0
        for item in sorted(seed.rglob("*")):
            if item.is_dir():
                continue
            target = self.root / item.relative_to(seed)
            if target.exists() and not overwrite:
                continue
            target.parent.mkdir(parents=True, exist_ok=True)
            shutil.copy2(item, target)
            copied += 1
        config_path = self.root / "kgforge.yaml"
        if not config_path.exists():
            config_path.write_text(
                yaml.safe_dump(DEFAULT_CONFIG, sort_keys=True), encoding="utf-8"
            )
            copied += 1
        report.counts["files_copied"] = copied
        self._write_report(report)
        return report

    # --------------------------------------------------------------- crawl

    def run_crawl(self) -> StageReport:
        report = self._report("crawl")
        mode = self.config.values.get("mode", "offline")
        crawl_cfg = self.config.values.get("crawl") or {}
        fixture_map = self.config.values.get("fixture_map")
        fetcher = Fetcher(
            mode=mode,
            fixture_map=self.config.path("fixture_map") if fixture_map else None,
            clock=self.clock(),
            retries=int(crawl_cfg.get("retries", 2)),
            rate_per_host=float(crawl_cfg.get("rate_per_host", 1.0)),
        )
        urls: list[str] = []
        seed_path = self.config.path("seed_list") if self.config.values.get("seed_list") else None
        if seed_path and seed_path.exists():
            urls = [l.strip() for l in seed_path.read_text(encoding="utf-8").splitlines()
                    if l.strip() and not l.startswith("#")]
        elif mode == "offline":
            urls = fetcher.seed_urls()
        if not urls:
            raise StageError("no seed URLs: provide a seed_list file or a fixture map")

        fetched = skipped = failed = 0
        for url in urls:
            info = fetcher.fixture_info(url) or {}
            try:
                page = fetcher.fetch_page(url)
            except FetchError as exc:
                failed += 1
                report.warnings.append(f"{url}: {exc}")
                continue
            from .harvest import content_digest, entry_id_for

            existing = self.config.path("corpus_dir") / f"{entry_id_for(url)}.meta.json"
            already = existing.exists()
            entry = store_page(
                self.config.path("corpus_dir"),
                page,
                recipe_name=info.get("recipe_name", ""),
                recipe_category=info.get("recipe_category", ""),
            )
            if already and entry.meta.content_hash == content_digest(page.content):
                skipped += 1
            else:
                fetched += 1
        report.counts.update(fetched=fetched, skipped=skipped, failed=failed)
        self._write_report(report)
        return report

    # ------------------------------------------------------------- extract

    def run_extract(self) -> StageReport:
        report = self._report("extract")
        listing = self.corpus_entries()
        if not listing.entries:
            raise StageError("no corpus entries: run the crawl stage first")
        tuples_dir = self.config.path("tuples_dir")
        tuples_dir.mkdir(parents=True, exist_ok=True)
        profiles = self.site_profiles()
        prompt = self.prompt_profile()
        provider = self.provider()
        config_hash = self.config.config_hash()

        processed = skipped = llm_incomplete = 0
        for entry in listing.entries:
            stamp_path = tuples_dir / f"{entry.id}.stamp.json"
            card_path = tuples_dir / f"{entry.id}.card.xml"
            llm_path = tuples_dir / f"{entry.id}.llm.xml"
            stamp = {"content_hash": entry.meta.content_hash, "config_hash": config_hash}
            if stamp_path.exists() and card_path.exists() and llm_path.exists():
                if json.loads(stamp_path.read_text(encoding="utf-8")) == stamp:
                    skipped += 1
                    continue
            html = entry.read_html().decode("utf-8", "replace")
            profile = profile_for_url(profiles, entry.meta.source_url)
            if profile is None:
                report.warnings.append(
                    f"{entry.id}: no site profile for {entry.meta.source_url}; page is LLM-only"
                )
                card_set = TupleSet(subject=entry.id)
                text = clean_page_text(html, None)
            else:
                card_set = parse_recipe_card(entry.id, html, profile)
                text = clean_page_text(html, profile)
            report.warnings.extend(f"{entry.id}: {w}" for w in card_set.warnings)
            try:
                llm_set = llm_extract(entry.id, text, prompt, provider)
            except LlmIncompleteError as exc:
                llm_incomplete += 1
                report.warnings.append(str(exc))
                llm_set = TupleSet(subject=entry.id)
            report.warnings.extend(f"{entry.id}: {w}" for w in llm_set.warnings)
            write_tuples_xml(card_set, card_path)
            write_tuples_xml(llm_set, llm_path)
            stamp_path.write_text(json.dumps(stamp, sort_keys=True) + "\n", encoding="utf-8")
            processed += 1
        report.counts.update(processed=processed, skipped=skipped,
                             llm_incomplete=llm_incomplete,
                             entries=len(listing.entries))
        self._write_report(report)
        return report

    # ------------------------------------------------------------- resolve

    def _surface_candidates(self, surface: str) -> list[str]:
        out = [surface]
        if surface.endswith("es"):
            out.append(surface[:-2])
        if surface.endswith("s"):
            out.append(surface[:-1])
        return out

    def _canonicalize_value(self, surface: str, schemes: list[Scheme], vocab,
                            clusters, resolutions: dict) -> str:
        """Resolve a controlled value to its canonical pref label; record the
        outcome for downstream flag classification."""
        for scheme in schemes:
            for candidate in self._surface_candidates(surface):
                outcome = resolve_entity(candidate, scheme, vocab, clusters=clusters)
                if isinstance(outcome, ConceptId):
                    resolutions[normalize_surface(surface)] = outcome
                    term = vocab.get(outcome)
                    return term.pref_label.text if term else surface
        outcome = resolve_entity(surface, schemes[0], vocab, clusters=clusters)
        resolutions[normalize_surface(surface)] = outcome
        return surface

    def run_resolve(self) -> StageReport:
        report = self._report("resolve")
        tuples_dir = self.config.path("tuples_dir")
        if not tuples_dir.exists() or not list(tuples_dir.glob("*.card.xml")):
            raise StageError("no tuple files: run the extract stage first")
        resolved_dir = self.config.path("resolved_dir")
        resolved_dir.mkdir(parents=True, exist_ok=True)
        vocab = self.vocab()
        pm = self.property_map()
        listing = self.corpus_entries()

        # corpus-wide clustering of controlled-value surfaces
        surfaces: list[tuple[str, str]] = []
        sets: dict[str, tuple[TupleSet, TupleSet, str]] = {}
        for entry in listing.entries:
            card = read_tuples_xml(tuples_dir / f"{entry.id}.card.xml")
            llm = read_tuples_xml(tuples_dir / f"{entry.id}.llm.xml")
            from urllib.parse import urlparse

            domain = urlparse(entry.meta.source_url).hostname or ""
            sets[entry.id] = (card, llm, domain)
            for ts in (card, llm):
                for t in ts.tuples:
                    canonical_prop = pm.map_property_name(t.property, domain)
                    spec = pm.spec_for(canonical_prop)
                    if spec.controlled and isinstance(t.value, str):
                        value = t.value
                        if canonical_prop == "has_ingredient" and t.source is Channel.CARD:
                            _, value = parse_ingredient_line(value, vocab)
                        surfaces.append((value, entry.id))
        clusters = cluster_entities(surfaces, self.minhash_config())
        (resolved_dir / "clusters.json").write_text(
            json.dumps(
                [{"representative": c.representative,
                  "members": sorted({m[0] for m in c.members}),
                  "verified_similarity": c.verified_similarity}
                 for c in clusters],
                indent=2, ensure_ascii=False, sort_keys=True,
            ) + "\n",
            encoding="utf-8",
        )

        resolved_count = unresolved_count = 0
        for entry_id in sorted(sets):
            card, llm, domain = sets[entry_id]
            resolutions: dict = {}
            out_sets = {}
            for channel_name, ts in (("card", card), ("llm", llm)):
                out = TupleSet(subject=entry_id)
                for t in ts.tuples:
                    canonical_prop = pm.map_property_name(t.property, domain)
                    spec = pm.spec_for(canonical_prop)
                    value = t.value
                    quantity = t.quantity
                    if spec.controlled and isinstance(value, str):
                        if canonical_prop == "has_ingredient" and t.source is Channel.CARD:
                            quantity, value = parse_ingredient_line(value, vocab)
                        value = self._canonicalize_value(
                            value, spec.schemes, vocab, clusters, resolutions
                        )
                    out.add(Tuple(
                        subject=entry_id,
                        property=canonical_prop,
                        value=value,
                        source=t.source,
                        quantity=quantity,
                        confidence=t.confidence,
                        span=t.span,
                        raw_property=t.raw_property or t.property,
                    ))
                out_sets[channel_name] = out
                write_tuples_xml(out, resolved_dir / f"{entry_id}.{channel_name}.xml")

            serializable = {}
            for key, outcome in sorted(resolutions.items()):
                if isinstance(outcome, ConceptId):
                    resolved_count += 1
                    serializable[key] = {"concept": outcome.iri}
                else:
                    unresolved_count += 1
                    serializable[key] = {
                        "unresolved": outcome.reason,
                        "near_misses": [
                            {"concept": n.concept.iri, "scheme": n.scheme.value,
                             "label": n.label, "kind": n.kind}
                            for n in outcome.near_misses
                        ],
                    }
            (resolved_dir / f"{entry_id}.resolutions.json").write_text(
                json.dumps(serializable, indent=2, ensure_ascii=False, sort_keys=True) + "\n",
                encoding="utf-8",
            )
        report.counts.update(
            entries=len(sets), clusters=len(clusters),
            resolved_surfaces=resolved_count, unresolved_surfaces=unresolved_count,
            unmapped_properties=sum(pm.unmapped_counts.values()),
        )
        self._write_report(report)
        return report

    # --------------------------------------------------------------- score

    def load_resolutions(self, entry_id: str):
        path = self.config.path("resolved_dir") / f"{entry_id}.resolutions.json"
        if not path.exists():
            return {}
        data = json.loads(path.read_text(encoding="utf-8"))
        out = {}
        for key, value in data.items():
            if "concept" in value:
                out[key] = ConceptId(value["concept"])
            else:
                from .resolve.entities import NearMiss

                out[key] = Unresolved(
                    surface=key,
                    reason=value["unresolved"],
                    near_misses=[
                        NearMiss(ConceptId(n["concept"]), Scheme(n["scheme"]),
                                 n["label"], n["kind"])
                        for n in value.get("near_misses", [])
                    ],
                )
        return out

    def load_decision_overlays(self) -> dict:
        """Per-entry corrections and rejections recorded by curation
        decisions; they persist across pipeline rounds."""
        from .curator.store import AuditLog

        audit = AuditLog(self.config.path("audit_path"), clock=self.clock())
        overlays: dict[str, dict] = {}
        for event in audit.events():
            if event["kind"] != "decision":
                continue
            payload = event["payload"]
            overlay = payload.get("overlay")
            if not overlay:
                continue
            entry = overlays.setdefault(payload["entry_id"], {"corrections": [], "rejections": []})
            if overlay["action"] == "correct":
                entry["corrections"].append(overlay)
            elif overlay["action"] == "reject":
                entry["rejections"].extend(overlay["items"])
        return overlays

    def _apply_overlay(self, ts: TupleSet, overlay: dict, vocab) -> TupleSet:
        out = TupleSet(subject=ts.subject)
        corrections = overlay.get("corrections", [])
        rejections = overlay.get("rejections", [])
        for t in ts.tuples:
            value_norm = normalize_surface(t.value if isinstance(t.value, str) else t.value_text())
            dropped = False
            for r in rejections:
                if (r["property"] == t.property and r["value_norm"] == value_norm
                        and (not r.get("channel") or r["channel"] == t.source.value)):
                    dropped = True
                    break
            if dropped:
                continue
            replaced = t
            for c in corrections:
                if (c["property"] == t.property and c["value_norm"] == value_norm
                        and (not c.get("channel") or c["channel"] == t.source.value)):
                    new_value = c["new_value"]
                    hits = vocab.lookup_term(new_value)
                    if hits:
                        term = vocab.get(hits[0][0])
                        new_value = term.pref_label.text
                    replaced = Tuple(
                        subject=t.subject, property=t.property, value=new_value,
                        source=t.source, quantity=t.quantity,
                        confidence=t.confidence, span=t.span,
                        raw_property=t.raw_property,
                    )
                    break
            out.add(replaced)
        return out

    def score_entry(self, entry_id: str, vocab=None, overlays=None):
        """Score one entry from its resolved tuple files; returns
        (ScoringResult, flags, candidates)."""
        vocab = vocab or self.vocab()
        resolved_dir = self.config.path("resolved_dir")
        card = read_tuples_xml(resolved_dir / f"{entry_id}.card.xml")
        llm = read_tuples_xml(resolved_dir / f"{entry_id}.llm.xml")
        overlays = overlays if overlays is not None else self.load_decision_overlays()
        overlay = overlays.get(entry_id)
        resolutions = self.load_resolutions(entry_id)
        if overlay:
            card = self._apply_overlay(card, overlay, vocab)
            llm = self._apply_overlay(llm, overlay, vocab)
            # re-resolve corrected values so flags and candidates see them
            for ts in (card, llm):
                for t in ts.tuples:
                    if isinstance(t.value, str):
                        key = normalize_surface(t.value)
                        if key not in resolutions:
                            spec = self.property_map().spec_for(t.property)
                            if spec.controlled:
                                self._canonicalize_value(
                                    t.value, spec.schemes, vocab, None, resolutions
                                )
        result = score_tuples(card, llm, vocab, self.property_map(), units=vocab.unit_table())
        candidates = candidate_tuples(result.scored)
        recipe = self.assemble_recipe(entry_id, candidates, resolutions, vocab)
        flags = flag_inconsistencies(
            result.scored,
            recipe,
            self.rules().rules,
            entry_id=entry_id,
            created_at=isoformat(self.clock().now()),
            ingredient_db=self.ingredient_db(),
            resolutions=resolutions,
            vocab=vocab,
        )
        return result, flags, candidates

    def run_score(self) -> StageReport:
        report = self._report("score")
        resolved_dir = self.config.path("resolved_dir")
        if not resolved_dir.exists() or not list(resolved_dir.glob("*.card.xml")):
            raise StageError("no resolved tuples: run the resolve stage first")
        scores_dir = self.config.path("scores_dir")
        scores_dir.mkdir(parents=True, exist_ok=True)
        vocab = self.vocab()
        overlays = self.load_decision_overlays()

        # decided flags stay in the queue record across scoring rounds so the
        # resolved counts (and audit replay) survive a full re-score
        from .curator.store import AuditLog
        from .soundness import read_flag_queue

        audit = AuditLog(self.config.path("audit_path"), clock=self.clock())
        decided_ids = {
            e["payload"]["flag_id"] for e in audit.events() if e["kind"] == "decision"
        }
        previous = {
            f.id: f for f in read_flag_queue(self.config.path("flags_path"))
            if f.id in decided_ids
        }

        all_flags: list[Flag] = list(previous.values())
        total_score = 0
        entry_ids = sorted(
            p.name[: -len(".card.xml")] for p in resolved_dir.glob("*.card.xml")
        )
        for entry_id in entry_ids:
            result, flags, candidates = self.score_entry(entry_id, vocab, overlays)
            all_flags.extend(f for f in flags if f.id not in decided_ids)
            total_score += result.total
            write_tuples_xml(candidates, resolved_dir / f"{entry_id}.candidates.xml")
            (scores_dir / f"{entry_id}.json").write_text(
                json.dumps({
                    "entry_id": entry_id,
                    "total": result.total,
                    "positive": len(result.positives()),
                    "negative": len(result.negatives()),
                    "flags": [f.id for f in flags],
                    "prompt_profile": self.prompt_profile().name,
                    "config_hash": self.config.config_hash(),
                }, indent=2, sort_keys=True) + "\n",
                encoding="utf-8",
            )
        all_flags.sort(key=lambda f: (f.reason.value, f.id))
        write_flag_queue(all_flags, self.config.path("flags_path"))
        report.counts.update(
            entries=len(entry_ids),
            total_score=total_score,
            flags=len(all_flags),
            new_flags=len(all_flags) - len(previous),
        )
        self._write_report(report)
        return report

    # -------------------------------------------------------- entity build

    def _claimed_slugs(self) -> dict[str, str]:
        if "claimed_slugs" not in self._cache:
            self._cache["claimed_slugs"] = {}
        return self._cache["claimed_slugs"]

    def recipe_id_for(self, entry_id: str, name: str) -> ConceptId:
        """Recipe instances stay unique even when names collide: the first
        entry claims the clean slug, later ones get an entry-id suffix."""
        slugs = self._claimed_slugs()
        slug = slugify(name) or entry_id
        owner = slugs.get(slug)
        if owner is not None and owner != entry_id:
            slug = f"{slug}-{entry_id[:8]}"
        slugs[slug] = entry_id
        return ConceptId(f"{self.base}/recipe/{slug}")

    def assemble_recipe(self, entry_id: str, candidates: TupleSet,
                        resolutions: dict, vocab) -> Recipe | None:
        """Build the Recipe entity from positively scored tuples."""
        by_prop = candidates.by_property()

        def first(prop: str) -> str | None:
            tuples = by_prop.get(prop)
            if not tuples:
                return None
            value = tuples[0].value
            return value if isinstance(value, str) else tuples[0].value_text()

        name = first("name")
        if not name:
            return None

        def concept(surface: str, schemes: list[Scheme]):
            for scheme in schemes:
                for candidate in self._surface_candidates(surface):
                    hits = vocab.lookup_term(candidate, scheme=scheme)
                    if hits:
                        return hits[0][0]
            return None

        serving_size = 1
        raw_serving = first("serving_size")
        if raw_serving:
            try:
                serving_size = max(1, int(Decimal(raw_serving)))
            except (ValueError, InvalidOperation):
                pass

        calories = None
        raw_calories = first("calories")
        if raw_calories:
            try:
                calories = Decimal(raw_calories)
            except InvalidOperation:
                pass

        ingredients = []
        for t in by_prop.get("has_ingredient", []):
            surface = t.value if isinstance(t.value, str) else t.value_text()
            resolved = concept(surface, [Scheme.INGREDIENT])
            quantity = t.quantity or Quantity(Decimal(1), unit=None, approximate=True)
            ingredients.append(IngredientUsage(
                ingredient=resolved if resolved else surface,
                quantity=quantity,
                raw_surface=surface,
            ))

        techniques, cookware = [], []
        for t in by_prop.get("has_cooking_char", []):
            surface = t.value if isinstance(t.value, str) else t.value_text()
            tech = concept(surface, [Scheme.COOKING_TECHNIQUE])
            if tech is not None:
                techniques.append(tech)
                continue
            ware = concept(surface, [Scheme.COOKWARE])
            if ware is not None:
                cookware.append(ware)

        diet_labels = []
        for t in by_prop.get("diet_label", []):
            surface = t.value if isinstance(t.value, str) else t.value_text()
            label = concept(surface, [Scheme.DIETARY_PRACTICE, Scheme.ALLERGEN_LABEL,
                                      Scheme.HEALTH_LABEL])
            if label is not None and label not in diet_labels:
                diet_labels.append(label)

        pairing = []
        for t in by_prop.get("pairing", []):
            surface = t.value if isinstance(t.value, str) else t.value_text()
            target = concept(surface, [Scheme.RECIPE])
            pairing.append(target if target is not None else surface)

        nutrition = NutritionProfile()
        gram_unit = vocab.unit_table().gram_unit()
        for prop, tuples in by_prop.items():
            if prop.startswith("nutrition_") and isinstance(tuples[0].value, Quantity):
                nutrient = ConceptId(f"{self.base}/nutrient/{prop[len('nutrition_'):]}")
                q = tuples[0].value
                nutrition.set_amount(nutrient, q.magnitude, gram_unit or ConceptId(
                    f"{self.base}/unit/gram"))

        cuisine_surface = first("cuisine")
        category_surface = first("category")
        return Recipe(
            id=self.recipe_id_for(entry_id, name),
            name=name,
            serving_size=serving_size,
            instructions=first("instructions") or "",
            subclass=concept(category_surface, [Scheme.RECIPE_CATEGORY]) if category_surface else None,
            cuisine=concept(cuisine_surface, [Scheme.CUISINE]) if cuisine_surface else None,
            calories=calories,
            characteristics=CookingCharacteristics(techniques=techniques, cookware=cookware),
            ingredients=ingredients,
            pairing=pairing,
            diet_labels=diet_labels,
            nutrition=nutrition if nutrition else None,
            provenance=entry_id,
        )

    # -------------------------------------------------------------- ingest

    def open_flag_count(self) -> int:
        from .curator.store import FlagStore

        store = FlagStore(self)
        return sum(1 for f in store.all_flags() if f.status.value == "open")

    def run_ingest(self, allow_open_flags: bool = False) -> StageReport:
        report = self._report("ingest")
        resolved_dir = self.config.path("resolved_dir")
        candidates = sorted(resolved_dir.glob("*.candidates.xml"))
        if not candidates:
            raise StageError("no candidate tuples: run the score stage first")
        open_flags = self.open_flag_count()
        if open_flags and not allow_open_flags:
            raise PendingCurationError(
                f"{open_flags} open flag(s) pending curation; "
                f"resolve them or pass --allow-open-flags"
            )

        vocab = self.vocab()
        db = self.ingredient_db()
        graph_path = self.config.path("graph_path")
        if graph_path.exists():
            graph = Graph.load(graph_path, self.base)
        else:
            graph = Graph(self.base)
        self._cache.pop("claimed_slugs", None)

        deltas: list = []

        # vocabulary concepts ride along in the same OWL file
        for term in sorted(vocab.terms.values(), key=lambda t: t.id.iri):
            deltas.append(graph.ingest(term_to_triples(term, self.base)))

        recipes = 0
        used_ingredients: set[ConceptId] = set()
        for path in candidates:
            entry_id = path.name[: -len(".candidates.xml")]
            cand = read_tuples_xml(path)
            resolutions = self.load_resolutions(entry_id)
            recipe = self.assemble_recipe(entry_id, cand, resolutions, vocab)
            if recipe is None:
                report.warnings.append(f"{entry_id}: no recipe name among candidates; skipped")
                continue
            derived = self.rules()
            from .ontology import derive_diet_labels

            derived_labels = derive_diet_labels(recipe, derived, db, base=self.base)
            recipe.diet_labels = [
                l for l in derived_labels.labels if l not in derived_labels.provisional
            ]
            usable = [u for u in recipe.ingredients if isinstance(u.ingredient, ConceptId)]
            dropped = [u.raw_surface for u in recipe.ingredients
                       if not isinstance(u.ingredient, ConceptId)]
            if dropped:
                report.warnings.append(
                    f"{entry_id}: unresolved ingredient(s) left out of the graph: "
                    + ", ".join(sorted(dropped))
                )
            recipe.ingredients = usable
            for usage in usable:
                used_ingredients.add(usage.ingredient)
            deltas.append(graph.ingest(to_triples(recipe, self.base)))
            recipes += 1

        for concept in sorted(used_ingredients):
            record = db.get(concept)
            if record is not None:
                deltas.append(graph.ingest(to_triples(record, self.base)))
            else:
                triples = [Triple(concept.iri, RDF_TYPE, class_iri(self.base, "Ingredient"))]
                term = vocab.get(concept)
                if term is not None:
                    for label in term.all_labels():
                        triples.append(Triple(
                            concept.iri, prop_iri(self.base, "name"),
                            Literal(label.text, language=label.language),
                        ))
                deltas.append(graph.ingest(KgTripleSet(triples=triples)))

        # associative links between same-name ingredient and recipe concepts
        links = []
        recipe_ns = f"{self.base}/recipe/"
        recipe_slugs = {
            s[len(recipe_ns):]: s
            for s in {t.subject for t in graph.triples()} | {
                t.object for t in graph.triples() if isinstance(t.object, str)
            }
            if s.startswith(recipe_ns)
        }
        for concept in sorted(used_ingredients):
            slug = concept.slug
            if slug in recipe_slugs:
                links.append(Triple(
                    concept.iri, prop_iri(self.base, "derived_from_recipe"),
                    recipe_slugs[slug],
                ))
        if links:
            deltas.append(graph.ingest(KgTripleSet(triples=links)))

        size = graph.serialize(graph_path, format="rdfxml")
        stats = graph.stats()
        stats.serialized_size_bytes = size

        from .curator.store import AuditLog

        AuditLog(self.config.path("audit_path"), clock=self.clock()).append(
            "ingest", {"recipes": recipes, "stats": stats.to_dict()}
        )
        report.counts.update(
            recipes=recipes,
            ingredient_nodes=stats.ingredient_node_count,
            triples=stats.triple_count,
            serialized_bytes=size,
            new_triples=sum(d.triple_count for d in deltas),
            new_recipe_nodes=sum(d.recipe_count for d in deltas),
            new_ingredient_nodes=sum(d.ingredient_node_count for d in deltas),
        )
        self._write_report(report)
        return report

    # --------------------------------------------------------------- stats

    def run_stats(self) -> StageReport:
        report = self._report("stats")
        graph_path = self.config.path("graph_path")
        if not graph_path.exists():
            raise StageError("no graph file: run the ingest stage first")
        graph = Graph.load(graph_path, self.base)
        stats = graph.stats()
        stats.serialized_size_bytes = graph_path.stat().st_size
        defects = graph.defect_report()
        report.counts.update(stats.to_dict())
        report.counts["code_mixed_nodes"] = len(defects.code_mixed_nodes)
        report.counts["duplication_candidates"] = len(defects.duplication_candidates)
        reports = self.config.path("reports_dir")
        reports.mkdir(parents=True, exist_ok=True)
        (reports / "graph_stats.json").write_text(
            json.dumps({"stats": stats.to_dict(),
                        "defects": {
                            "code_mixed_nodes": defects.code_mixed_nodes,
                            "duplication_candidates": defects.duplication_candidates,
                        }}, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        self._write_report(report)
        return report

    # -------------------------------------------------------------- export

    def run_export(self, out_path: str | Path, format: str = "turtle") -> StageReport:
        report = self._report("export")
        graph_path = self.config.path("graph_path")
        if not graph_path.exists():
            raise StageError("no graph file: run the ingest stage first")
        graph = Graph.load(graph_path, self.base)
        size = graph.serialize(out_path, format=format)
        report.counts.update(triples=len(graph), serialized_bytes=size)
        self._write_report(report)
        return report

    # ------------------------------------------------------------ pipeline

    def run_stage(self, stage: str, **kwargs) -> StageReport:
        runners = {
            "init": self.init_workspace,
            "crawl": self.run_crawl,
            "extract": self.run_extract,
            "resolve": self.run_resolve,
            "score": self.run_score,
            "ingest": self.run_ingest,
            "stats": self.run_stats,
            "export": self.run_export,
        }
        if stage not in runners:
            raise StageError(f"unknown stage {stage!r}")
        return runners[stage](**kwargs)

    def run_pipeline(self, stop_at: str | None = None, strict: bool = False,
                     allow_open_flags: bool = False) -> dict:
        """Run crawl through ingest in order. With ``strict``, open flags
        after scoring halt the pipeline before ingest (the human gate)."""
        reports = []
        aggregated = {"reports": reports, "halted": None}
        for stage in STAGES:
            if stage == "ingest":
                open_flags = self.open_flag_count()
                if strict and open_flags:
                    aggregated["halted"] = "pending_curation"
                    aggregated["open_flags"] = open_flags
                    break
                reports.append(self.run_ingest(allow_open_flags=allow_open_flags).to_dict())
            else:
                reports.append(self.run_stage(stage).to_dict())
            if stop_at == stage:
                aggregated["halted"] = f"stop_at:{stage}"
                break
        for r in reports:
            if r["stage"] == "score":
                aggregated["total_score"] = r["counts"].get("total_score")
                aggregated["open_flags"] = aggregated.get(
                    "open_flags", r["counts"].get("flags")
                )
        return aggregated
