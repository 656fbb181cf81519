"""Command-line entry points.

    conceptgen split --in pairs.jsonl --out-dir splits/
    conceptgen generate --checkpoint model.ckpt --concepts dog,chase,cat
    conceptgen evaluate --batch gen.jsonl --scorer scorer.lm --tfidf table.idf
    conceptgen pipeline run --config cfg.json --run-dir runs/demo
    conceptgen serve --run-dir runs/demo --store items.log --port 8000
    conceptgen export --store items.log --out accepted.jsonl
"""

from __future__ import annotations

import logging
from pathlib import Path

import click

from .controls import CefrLevel, ControlItem, LabeledConceptSet, RoleLabel, serialize_controls
from .corpus import read_pairs, write_pairs
from .lexicon import default_lexicon
from .metrics import TfidfTable, TrigramScorer, read_records, report
from .seq2seq import DecoderConfig, load_checkpoint
from .splitter import SplitSpec, stratified_split
from .srl import RuleBasedRoleParser
from .pipeline.run import PipelineConfig, run_pipeline
from .pipeline.store import ItemStore, export_accepted


@click.group()
@click.option("--verbose", is_flag=True, help="Log stage and epoch progress.")
def main(verbose: bool):
    """Concept-to-sentence generation with CEFR and role controls."""
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


@main.command()
@click.option("--in", "in_path", required=True, type=click.Path(exists=True))
@click.option("--out-dir", required=True, type=click.Path())
@click.option("--test-per-stratum", default=500, show_default=True)
@click.option("--high", default=0.10, show_default=True, help="High-frequency stratum fraction.")
@click.option("--low", default=0.10, show_default=True, help="Low-frequency stratum fraction.")
@click.option("--val", default=0.10, show_default=True, help="Validation fraction of the remainder.")
@click.option("--seed", default=13, show_default=True)
def split(in_path, out_dir, test_per_stratum, high, low, val, seed):
    """Stratified frequency split of a pair file into four partitions."""
    lexicon = default_lexicon()
    pairs = read_pairs(in_path, lexicon)
    spec = SplitSpec(
        high_fraction=high,
        low_fraction=low,
        test_per_stratum=test_per_stratum,
        val_fraction=val,
        seed=seed,
    )
    result = stratified_split(pairs, spec)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, subset in result.partitions().items():
        write_pairs(subset, out / f"{name}.jsonl")
        click.echo(f"{name}: {len(subset)} pairs")


def _parse_roles(raw: str | None) -> dict[str, RoleLabel]:
    if not raw:
        return {}
    out = {}
    for chunk in raw.split(","):
        concept, _, role = chunk.partition("=")
        if not role:
            raise click.BadParameter(f"expected concept=ROLE, got {chunk!r}")
        try:
            out[concept.strip()] = RoleLabel(role.strip())
        except ValueError:
            raise click.BadParameter(f"unknown role {role!r}")
    return out


@main.command()
@click.option("--checkpoint", required=True, type=click.Path(exists=True))
@click.option("--concepts", required=True, help="Comma-separated lemmas, e.g. dog,chase,cat.")
@click.option("--cefr", default=None, type=click.Choice([l.name for l in CefrLevel]))
@click.option("--roles", default=None, help="Comma-separated concept=ROLE assignments.")
@click.option("-n", "count", default=1, show_default=True, help="Candidates to sample.")
@click.option("--k", default=50, show_default=True)
@click.option("--max-len", default=64, show_default=True)
@click.option("--seed", default=7, show_default=True)
def generate(checkpoint, concepts, cefr, roles, count, k, max_len, seed):
    """Sample sentences for one concept set from a trained checkpoint."""
    model = load_checkpoint(checkpoint)
    concept_list = [c.strip() for c in concepts.split(",") if c.strip()]
    role_map = _parse_roles(roles)
    unknown = set(role_map) - set(concept_list)
    if unknown:
        raise click.BadParameter(f"roles name absent concepts: {sorted(unknown)}")
    if role_map:
        items = tuple(
            ControlItem(concept=c, role=role_map.get(c, RoleLabel.OTHER))
            for c in sorted(concept_list)
        )
    else:
        items = tuple(ControlItem(concept=c) for c in sorted(concept_list))
    level = CefrLevel[cefr] if cefr else None
    input_tokens = serialize_controls(LabeledConceptSet(items=items, cefr=level))
    for i in range(count):
        dcfg = DecoderConfig(k=k, max_length=max_len, seed=seed + i)
        tokens = model.generate_tokens(input_tokens, dcfg)
        click.echo(" ".join(tokens))


@main.command()
@click.option("--batch", required=True, type=click.Path(exists=True), help="Generation records, one JSON object per line.")
@click.option("--scorer", "scorer_path", required=True, type=click.Path(exists=True))
@click.option("--tfidf", "tfidf_path", required=True, type=click.Path(exists=True))
@click.option("--json-out", default=None, type=click.Path(), help="Also write the report as JSON.")
def evaluate(batch, scorer_path, tfidf_path, json_out):
    """Score a generation batch and print the metric report."""
    lexicon = default_lexicon()
    records = read_records(batch, lexicon)
    scorer = TrigramScorer.load(scorer_path)
    table = TfidfTable.load(tfidf_path)
    result = report(records, scorer, table, RuleBasedRoleParser(), lexicon)
    click.echo(result.render_text())
    if json_out:
        import json as json_lib

        with open(json_out, "w", encoding="utf-8") as fh:
            json_lib.dump(result.to_dict(), fh, sort_keys=True, indent=2)
            fh.write("\n")


@main.group()
def pipeline():
    """Multi-stage runs driven by a JSON config."""


@pipeline.command("run")
@click.option("--config", required=True, type=click.Path(exists=True))
@click.option("--run-dir", required=True, type=click.Path())
@click.option("--no-resume", is_flag=True, help="Recompute every stage.")
def pipeline_run(config, run_dir, no_resume):
    """Execute ingest, split, tag, train, generate, evaluate."""
    out = run_pipeline(PipelineConfig.from_file(config), run_dir, resume=not no_resume)
    click.echo(f"run complete: {out}")


@main.command()
@click.option("--run-dir", required=True, type=click.Path(exists=True), help="Directory produced by `pipeline run`.")
@click.option("--store", "store_path", required=True, type=click.Path())
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(run_dir, store_path, host, port):
    """Serve generation and review endpoints for the curation UI."""
    import uvicorn

    from .pipeline.service import create_app

    run = Path(run_dir)
    model = load_checkpoint(run / "model.ckpt")
    table = TfidfTable.load(run / "table.idf")
    app = create_app(model, ItemStore(store_path), table, default_lexicon())
    uvicorn.run(app, host=host, port=port)


@main.command()
@click.option("--store", "store_path", required=True, type=click.Path(exists=True))
@click.option("--out", required=True, type=click.Path())
def export(store_path, out):
    """Write accepted items as corpus pairs."""
    store = ItemStore(store_path)
    try:
        count = export_accepted(store, out, default_lexicon())
    finally:
        store.close()
    click.echo(f"exported {count} pairs to {out}")


if __name__ == "__main__":
    main()
