"""Config-driven run: ingest, split, tag, train, generate, evaluate.

Every stage writes its artifacts into the run directory and records their
digests in manifest.json. The manifest contains no timestamps, so two runs
with the same config and seeds produce byte-identical manifests. A failed
stage aborts with its name; rerunning with the same config resumes after
the last completed stage whose artifacts are still intact.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from ..cefr import attach_cefr, score_cefr
from ..controls import LabeledConceptSet, plain_controls, serialize_controls
from ..corpus import ConceptSentencePair, read_pairs, write_pairs
from ..errors import EmptySentence, NoVerbFound, StageFailure
from ..lexicon import Lexicon, default_lexicon
from ..metrics import (
    GenerationRecord,
    TfidfTable,
    TrigramScorer,
    report,
    write_records,
)
from ..seq2seq import (
    ConceptToSequenceModel,
    DecoderConfig,
    ModelConfig,
    TrainingConfig,
    load_checkpoint,
    save_checkpoint,
)
from ..splitter import DatasetSplit, SplitSpec, stratified_split
from ..srl import RoleParser, RuleBasedRoleParser, align_roles
from .. import toydata

logger = logging.getLogger(__name__)

STAGES = ("ingest", "split", "tag", "train", "generate", "evaluate")
CONTROL_SCHEMES = ("none", "cefr", "srl", "both")


def base_input(concepts) -> list[str]:
    """Uncontrolled model input: bare concepts in canonical order."""
    return serialize_controls(plain_controls(concepts))


def role_labeled(
    pair: ConceptSentencePair, parser: RoleParser
) -> LabeledConceptSet:
    """Role annotations for a pair, aligned from its reference sentence."""
    parse = parser.parse(pair.sentence)
    return align_roles(parse, pair.concepts, pair.sentence)


def labeled_for_scheme(
    pair: ConceptSentencePair,
    scheme: str,
    lexicon: Lexicon,
    parser: RoleParser | None = None,
) -> LabeledConceptSet:
    """Annotate one pair's concepts per the control scheme."""
    if scheme not in CONTROL_SCHEMES:
        raise ValueError(f"unknown control scheme {scheme!r}")
    if scheme == "none":
        return plain_controls(pair.concepts)
    level = None
    if scheme in ("cefr", "both"):
        level = score_cefr(pair.sentence, lexicon)
    if scheme in ("srl", "both"):
        labeled = role_labeled(pair, parser if parser is not None else RuleBasedRoleParser())
        return LabeledConceptSet(items=labeled.items, cefr=level)
    return attach_cefr(pair.concepts, level)


def training_pairs(
    pairs: Sequence[ConceptSentencePair],
    scheme: str,
    lexicon: Lexicon,
    parser: RoleParser | None = None,
    strict: bool = False,
) -> list[tuple[list[str], list[str], str]]:
    """(inputTokens, targetTokens, pairId) triples under a control scheme.

    Pairs that cannot be annotated (no verb for role labeling, no content
    tokens for level scoring) are skipped with a warning unless strict.
    """
    out = []
    for pair in pairs:
        try:
            labeled = labeled_for_scheme(pair, scheme, lexicon, parser)
        except (NoVerbFound, EmptySentence) as exc:
            if strict:
                raise
            logger.warning("skipping pair %s: %s", pair.id, exc)
            continue
        out.append((serialize_controls(labeled), list(pair.sentence.surfaces()), pair.id))
    return out


@dataclass(frozen=True)
class PipelineConfig:
    corpus: str
    controls: str = "none"
    split: SplitSpec = field(default_factory=SplitSpec)
    model: ModelConfig = field(default_factory=ModelConfig)
    training: TrainingConfig = field(default_factory=TrainingConfig)
    decoder: DecoderConfig = field(default_factory=DecoderConfig)
    generation_seed: int = 7
    samples: int | None = None
    model_tag: str = "run"

    def __post_init__(self):
        if self.controls not in CONTROL_SCHEMES:
            raise ValueError(f"controls must be one of {CONTROL_SCHEMES}")
        if self.samples is not None and self.samples < 1:
            raise ValueError("samples must be >= 1 when given")

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        return cls(
            corpus=raw["corpus"],
            controls=raw.get("controls", "none"),
            split=SplitSpec(**raw.get("split", {})),
            model=ModelConfig(**raw.get("model", {})),
            training=TrainingConfig(**raw.get("training", {})),
            decoder=DecoderConfig(**raw.get("decoder", {})),
            generation_seed=raw.get("generation_seed", 7),
            samples=raw.get("samples"),
            model_tag=raw.get("model_tag", "run"),
        )

    def to_dict(self) -> dict:
        from dataclasses import asdict

        return {
            "corpus": self.corpus,
            "controls": self.controls,
            "split": asdict(self.split),
            "model": asdict(self.model),
            "training": asdict(self.training),
            "decoder": asdict(self.decoder),
            "generation_seed": self.generation_seed,
            "samples": self.samples,
            "model_tag": self.model_tag,
        }


def _digest(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


class _Manifest:
    def __init__(self, run_dir: Path, config: PipelineConfig):
        self.path = run_dir / "manifest.json"
        self.run_dir = run_dir
        self.data = {"config": config.to_dict(), "stages": {}}

    def load_existing(self) -> bool:
        """True when a manifest for the same config is present."""
        if not self.path.exists():
            return False
        with open(self.path, "r", encoding="utf-8") as fh:
            existing = json.load(fh)
        if existing.get("config") != self.data["config"]:
            raise StageFailure(
                "ingest", "run directory holds a manifest for a different config"
            )
        self.data = existing
        return True

    def stage_done(self, stage: str) -> bool:
        entry = self.data["stages"].get(stage)
        if not entry:
            return False
        for name, digest in entry["outputs"].items():
            path = self.run_dir / name
            if not path.exists() or _digest(path) != digest:
                return False
        return True

    def record(self, stage: str, outputs: list[Path]) -> None:
        self.data["stages"][stage] = {
            "outputs": {
                str(p.relative_to(self.run_dir)): _digest(p) for p in sorted(outputs)
            }
        }
        tmp = self.path.with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(self.data, fh, sort_keys=True, indent=2)
            fh.write("\n")
        os.replace(tmp, self.path)


def _ingest(config: PipelineConfig, lexicon: Lexicon) -> list[ConceptSentencePair]:
    name = config.corpus
    if name == "toy:svo":
        return toydata.svo_corpus(lexicon)
    if name == "toy:cefr":
        return [pair for pair, _ in toydata.cefr_corpus(lexicon)]
    if name == "toy:people":
        return toydata.people_corpus(lexicon)
    path = Path(name)
    if not path.exists():
        raise StageFailure("ingest", f"corpus file not found: {path}")
    return read_pairs(path, lexicon)


def _write_tagged(rows: list[tuple[list[str], list[str], str]], path: Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for input_tokens, target_tokens, pair_id in rows:
            fh.write(
                json.dumps(
                    {"id": pair_id, "input": input_tokens, "target": target_tokens},
                    sort_keys=True,
                    ensure_ascii=False,
                )
                + "\n"
            )


def _read_tagged(path: Path) -> list[tuple[list[str], list[str], str]]:
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                rec = json.loads(line)
                rows.append((rec["input"], rec["target"], rec["id"]))
    return rows


def run_pipeline(
    config: PipelineConfig | str | Path,
    run_dir: str | Path,
    lexicon: Lexicon | None = None,
    resume: bool = True,
) -> Path:
    """Execute all stages, reusing completed ones when resume is set."""
    if not isinstance(config, PipelineConfig):
        config = PipelineConfig.from_file(config)
    run_dir = Path(run_dir)
    run_dir.mkdir(parents=True, exist_ok=True)
    (run_dir / "splits").mkdir(exist_ok=True)
    lexicon = lexicon if lexicon is not None else default_lexicon()
    parser = RuleBasedRoleParser()
    manifest = _Manifest(run_dir, config)
    if resume:
        manifest.load_existing()

    pairs_path = run_dir / "pairs.jsonl"
    split_paths = {
        name: run_dir / "splits" / f"{name}.jsonl"
        for name in ("train", "validation", "test_high", "test_low")
    }
    tagged_paths = {
        "train": run_dir / "tagged_train.jsonl",
        "validation": run_dir / "tagged_validation.jsonl",
        "test": run_dir / "tagged_test.jsonl",
    }
    checkpoint_path = run_dir / "model.ckpt"
    history_path = run_dir / "history.json"
    scorer_path = run_dir / "scorer.lm"
    table_path = run_dir / "table.idf"
    generated_path = run_dir / "generated.jsonl"
    report_json = run_dir / "report.json"
    report_text = run_dir / "report.txt"

    def stage(name: str):
        logger.info("stage %s", name)

    if not manifest.stage_done("ingest"):
        stage("ingest")
        pairs = _ingest(config, lexicon)
        if not pairs:
            raise StageFailure("ingest", "corpus produced no pairs")
        write_pairs(pairs, pairs_path)
        manifest.record("ingest", [pairs_path])
    pairs = read_pairs(pairs_path, lexicon)

    if not manifest.stage_done("split"):
        stage("split")
        try:
            split = stratified_split(pairs, config.split)
        except Exception as exc:
            raise StageFailure("split", str(exc)) from exc
        for name, subset in split.partitions().items():
            write_pairs(subset, split_paths[name])
        manifest.record("split", list(split_paths.values()))
    parts = {
        name: read_pairs(path, lexicon) for name, path in split_paths.items()
    }

    if not manifest.stage_done("tag"):
        stage("tag")
        try:
            _write_tagged(
                training_pairs(parts["train"], config.controls, lexicon, parser),
                tagged_paths["train"],
            )
            _write_tagged(
                training_pairs(parts["validation"], config.controls, lexicon, parser),
                tagged_paths["validation"],
            )
            _write_tagged(
                training_pairs(
                    parts["test_high"] + parts["test_low"], config.controls, lexicon, parser
                ),
                tagged_paths["test"],
            )
        except Exception as exc:
            raise StageFailure("tag", str(exc)) from exc
        manifest.record("tag", list(tagged_paths.values()))

    if not manifest.stage_done("train"):
        stage("train")
        train_rows = _read_tagged(tagged_paths["train"])
        val_rows = _read_tagged(tagged_paths["validation"])
        if not train_rows:
            raise StageFailure("train", "no training pairs after tagging")
        model = ConceptToSequenceModel(
            model_config=config.model, training_config=config.training
        )
        model.fit(
            [(inp, tgt) for inp, tgt, _ in train_rows],
            validation_data=[(inp, tgt) for inp, tgt, _ in val_rows] or None,
        )
        save_checkpoint(checkpoint_path, model)
        with open(history_path, "w", encoding="utf-8") as fh:
            json.dump(model.history_, fh, sort_keys=True, indent=2)
            fh.write("\n")
        scorer = TrigramScorer().fit([p.sentence for p in parts["train"]])
        scorer.save(scorer_path)
        table = TfidfTable.build(p.sentence for p in parts["train"])
        table.save(table_path)
        manifest.record(
            "train", [checkpoint_path, history_path, scorer_path, table_path]
        )

    if not manifest.stage_done("generate"):
        stage("generate")
        model = load_checkpoint(checkpoint_path)
        test_rows = _read_tagged(tagged_paths["test"])
        if config.samples is not None:
            test_rows = test_rows[: config.samples]
        if not test_rows:
            raise StageFailure("generate", "no test inputs to generate from")
        records = []
        from ..controls import parse_controls
        from ..corpus import sentence_from_text

        for j, (input_tokens, _, _) in enumerate(test_rows):
            dcfg = DecoderConfig(
                strategy=config.decoder.strategy,
                k=config.decoder.k,
                max_length=config.decoder.max_length,
                length_penalty=config.decoder.length_penalty,
                seed=config.generation_seed * 100003 + j,
            )
            tokens = model.generate_tokens(input_tokens, dcfg)
            if not tokens:
                tokens = ["<unk>"]
            records.append(
                GenerationRecord(
                    input=parse_controls(input_tokens),
                    output=sentence_from_text(" ".join(tokens), lexicon),
                    model_tag=config.model_tag,
                )
            )
        write_records(records, generated_path)
        manifest.record("generate", [generated_path])

    if not manifest.stage_done("evaluate"):
        stage("evaluate")
        from ..metrics import read_records

        records = read_records(generated_path, lexicon)
        scorer = TrigramScorer.load(scorer_path)
        table = TfidfTable.load(table_path)
        result = report(records, scorer, table, parser, lexicon)
        with open(report_json, "w", encoding="utf-8") as fh:
            json.dump(result.to_dict(), fh, sort_keys=True, indent=2)
            fh.write("\n")
        with open(report_text, "w", encoding="utf-8") as fh:
            fh.write(result.render_text() + "\n")
        manifest.record("evaluate", [report_json, report_text])

    return run_dir
