#!/usr/bin/env python3
"""End to end over the bundled corpus: crawl -> extract -> resolve -> score,
then ingest (overriding the human gate for the demo) and inspect the graph.

Run from the repo root: python demos/05_pipeline_and_graph.py
"""

import tempfile
from pathlib import Path

import yaml

from kgforge.kgstore import Graph
from kgforge.pipeline import Workspace, WorkspaceConfig
from kgforge.soundness import read_flag_queue

ROOT = Path(__file__).resolve().parent.parent

with tempfile.TemporaryDirectory() as tmp:
    ws_dir = Path(tmp) / "ws"
    ws_dir.mkdir()
    (ws_dir / "kgforge.yaml").write_text(yaml.safe_dump({
        "fixture_map": str(ROOT / "fixtures" / "urls.json"),
        "seed_list": None,
        "clock": "2024-07-15T00:00:00Z",
    }))
    ws = Workspace(WorkspaceConfig.load(ws_dir))
    ws.init_workspace()

    for stage in ("crawl", "extract", "resolve", "score"):
        report = ws.run_stage(stage)
        print(f"{stage:8s} {report.counts}")

    print("\nflag queue after round one:")
    for flag in read_flag_queue(ws.config.path("flags_path")):
        print(f"  {flag.reason.value:22s} {flag.detail[:72]}")

    report = ws.run_ingest(allow_open_flags=True)  # demo only; curate first in real use
    print(f"\ningest   {report.counts}")

    graph = Graph.load(ws.config.path("graph_path"), ws.base)
    stats = graph.stats()
    print(f"\ngraph: {stats.recipe_count} recipes, "
          f"{stats.ingredient_node_count} ingredient nodes, "
          f"{stats.category_count} categories, {stats.triple_count} triples")

    chettinad = f"{ws.base}/recipe/chicken-chettinad"
    print(f"\nmeasured ingredients of <{chettinad}>:")
    from kgforge.kgstore import prop_iri
    from kgforge.kgstore.triples import RDF_SUBJECT, RDF_OBJECT, Literal

    edges = [t for t in graph.triples()
             if t.subject == chettinad and t.predicate == prop_iri(ws.base, "has_ingredient")]
    for edge in edges:
        qualifier_nodes = [
            t.subject for t in graph.triples()
            if t.predicate == RDF_SUBJECT and t.object == edge.subject
        ]
        amount = unit = ""
        for q in qualifier_nodes:
            if edge.object in [t.object for t in graph.triples()
                               if t.subject == q and t.predicate == RDF_OBJECT]:
                for t in graph.triples():
                    if t.subject == q and t.predicate == prop_iri(ws.base, "quantity_magnitude"):
                        amount = t.object.value if isinstance(t.object, Literal) else ""
                    if t.subject == q and t.predicate == prop_iri(ws.base, "quantity_unit"):
                        unit = t.object if isinstance(t.object, str) else t.object.value
        unit_slug = unit.rsplit("/", 1)[-1] if unit else ""
        print(f"  {edge.object.rsplit('/', 1)[-1]:16s} {amount} {unit_slug}")

    defects = graph.defect_report()
    print(f"\ndefect report: {len(defects.code_mixed_nodes)} code-mixed nodes, "
          f"{len(defects.duplication_candidates)} duplication candidates")
