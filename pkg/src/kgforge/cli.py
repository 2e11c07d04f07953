"""kgforge command line: pipeline stages, full runs, and the curation server.

Exit codes: 0 success, 2 pending curation (the human gate), 1 error.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .pipeline import PendingCurationError, StageError, Workspace, WorkspaceConfig


def _workspace(ctx) -> Workspace:
    config = WorkspaceConfig.load(ctx.obj["workspace"], ctx.obj.get("config"))
    if ctx.obj.get("mode"):
        config.values["mode"] = ctx.obj["mode"]
    return Workspace(config)


def _echo_report(report) -> None:
    click.echo(json.dumps(report.to_dict(), indent=2, sort_keys=True))


def _run(ctx, fn, **kwargs):
    try:
        report = fn(**kwargs)
    except PendingCurationError as exc:
        click.echo(f"pending curation: {exc}", err=True)
        sys.exit(2)
    except (StageError, FileNotFoundError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    _echo_report(report)


@click.group()
@click.option("--workspace", "-w", default=".", show_default=True,
              help="Workspace directory.")
@click.option("--config", "-c", default=None,
              help="Config file (default: <workspace>/kgforge.yaml).")
@click.option("--mode", type=click.Choice(["live", "offline"]), default=None,
              help="Override the configured fetch mode.")
@click.option("--strict/--no-strict", default=False,
              help="Halt full runs after scoring when open flags exist.")
@click.pass_context
def main(ctx, workspace, config, mode, strict):
    """Build a food knowledge graph from recipe pages."""
    ctx.ensure_object(dict)
    ctx.obj.update(workspace=workspace, config=config, mode=mode, strict=strict)


@main.command()
@click.option("--seed-dir", default=None, help="Alternative seed data directory.")
@click.option("--overwrite", is_flag=True, default=False)
@click.pass_context
def init(ctx, seed_dir, overwrite):
    """Scaffold a workspace with the bundled seed data."""
    ws = Workspace(WorkspaceConfig.load(ctx.obj["workspace"], ctx.obj.get("config")))
    _run(ctx, ws.init_workspace, seed_dir=seed_dir, overwrite=overwrite)


@main.command()
@click.option("--rate", type=float, default=None, help="Max fetches per second per host.")
@click.option("--out", default=None, help="Corpus directory override.")
@click.pass_context
def crawl(ctx, rate, out):
    """Fetch the seed URLs into the local corpus."""
    ws = _workspace(ctx)
    if rate is not None:
        ws.config.values.setdefault("crawl", {})
        ws.config.values["crawl"]["rate_per_host"] = rate
    if out is not None:
        ws.config.values["corpus_dir"] = out
    _run(ctx, ws.run_crawl)


@main.command()
@click.pass_context
def extract(ctx):
    """Parse recipe cards and run the extraction provider per entry."""
    _run(ctx, _workspace(ctx).run_extract)


@main.command()
@click.pass_context
def resolve(ctx):
    """Cluster surfaces and canonicalize properties and values."""
    _run(ctx, _workspace(ctx).run_resolve)


@main.command()
@click.pass_context
def score(ctx):
    """Score card vs LLM tuples and build the flag queue."""
    _run(ctx, _workspace(ctx).run_score)


@main.command()
@click.option("--allow-open-flags", is_flag=True, default=False,
              help="Ingest even while flags await curation.")
@click.pass_context
def ingest(ctx, allow_open_flags):
    """Convert validated candidates into the knowledge graph."""
    _run(ctx, _workspace(ctx).run_ingest, allow_open_flags=allow_open_flags)


@main.command()
@click.pass_context
def stats(ctx):
    """Report graph statistics and defect diagnostics."""
    _run(ctx, _workspace(ctx).run_stats)


@main.command()
@click.option("--out", "-o", required=True, help="Output file.")
@click.option("--format", "fmt", type=click.Choice(["rdfxml", "turtle"]),
              default="turtle", show_default=True)
@click.pass_context
def export(ctx, out, fmt):
    """Serialize the graph to RDF/XML or Turtle."""
    _run(ctx, _workspace(ctx).run_export, out_path=out, format=fmt)


@main.command()
@click.option("--stop-at", type=click.Choice(["crawl", "extract", "resolve", "score", "ingest"]),
              default=None, help="Halt after this stage.")
@click.option("--allow-open-flags", is_flag=True, default=False)
@click.pass_context
def run(ctx, stop_at, allow_open_flags):
    """Run the full pipeline: crawl, extract, resolve, score, ingest."""
    ws = _workspace(ctx)
    try:
        aggregated = ws.run_pipeline(
            stop_at=stop_at, strict=ctx.obj["strict"], allow_open_flags=allow_open_flags
        )
    except PendingCurationError as exc:
        click.echo(f"pending curation: {exc}", err=True)
        sys.exit(2)
    except (StageError, FileNotFoundError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    click.echo(json.dumps(aggregated, indent=2, sort_keys=True))
    if aggregated.get("halted") == "pending_curation":
        sys.exit(2)


@main.command()
@click.option("--port", "-p", type=int, default=8750, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.pass_context
def serve(ctx, port, host):
    """Serve the curation API (and UI, when built) over HTTP."""
    import uvicorn

    from .curator.service import create_app

    app = create_app(_workspace(ctx))
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
