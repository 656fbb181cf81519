"""Batch metrics: coverage, perplexity, length, diversity, role overlap."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from ..controls import CefrLevel, ControlItem, LabeledConceptSet, RoleLabel
from ..corpus import Sentence, sentence_from_text
from ..errors import EmptyBatch, NoVerbFound, PairFormatError
from ..lexicon import Lexicon
from ..srl import RoleParser, SRLParse
from .ngram import SentenceScorer
from .tfidf import TfidfTable

OVERLAP_ROLES = (RoleLabel.V, RoleLabel.ARG0, RoleLabel.ARG1, RoleLabel.ARGM)


@dataclass(frozen=True)
class GenerationRecord:
    input: LabeledConceptSet
    output: Sentence
    model_tag: str = ""

    def __post_init__(self):
        if not self.output.tokens:
            raise ValueError("output sentence must be nonempty")


@dataclass(frozen=True)
class MetricReport:
    perplexity: float
    coverage_all: float
    coverage_any: float
    mean_length: float
    diversity: float
    srl_overlap: dict[RoleLabel, float] = field(default_factory=dict)

    def __post_init__(self):
        if not 0.0 <= self.coverage_all <= self.coverage_any <= 100.0:
            raise ValueError(
                f"coverage out of order: all={self.coverage_all} any={self.coverage_any}"
            )
        if self.mean_length < 0:
            raise ValueError("mean_length must be nonnegative")

    def to_dict(self) -> dict:
        return {
            "perplexity": self.perplexity,
            "coverageAll": self.coverage_all,
            "coverageAny": self.coverage_any,
            "meanLength": self.mean_length,
            "diversity": self.diversity,
            "srlOverlap": {r.value: v for r, v in self.srl_overlap.items()},
        }

    def render_text(self) -> str:
        rows = [
            ("perplexity", f"{self.perplexity:.2f}"),
            ("coverage (all) %", f"{self.coverage_all:.2f}"),
            ("coverage (any) %", f"{self.coverage_any:.2f}"),
            ("length", f"{self.mean_length:.2f}"),
            ("diversity", f"{self.diversity:.4f}"),
        ]
        for role in OVERLAP_ROLES:
            if role in self.srl_overlap:
                rows.append((f"srl {role.value} %", f"{self.srl_overlap[role]:.2f}"))
        label_width = max(len(label) for label, _ in rows)
        value_width = max(len(value) for _, value in rows)
        return "\n".join(
            f"{label.ljust(label_width)}  {value.rjust(value_width)}" for label, value in rows
        )


def coverage(records: Sequence[GenerationRecord]) -> tuple[float, float]:
    """(% with all input concepts present, % with at least one)."""
    if not records:
        raise EmptyBatch("no records")
    n_all = n_any = 0
    for record in records:
        lemmas = set(record.output.lemmas())
        concepts = record.input.concepts()
        hits = sum(1 for c in concepts if c in lemmas)
        if hits:
            n_any += 1
        if hits == len(concepts):
            n_all += 1
    return 100.0 * n_all / len(records), 100.0 * n_any / len(records)


def perplexity(sentences: Sequence[Sentence], scorer: SentenceScorer) -> float:
    """exp of mean negative log-likelihood per word over the batch."""
    if not sentences:
        raise EmptyBatch("no sentences")
    total_logprob = 0.0
    total_words = 0
    for sentence in sentences:
        logprob, n = scorer.score(sentence)
        total_logprob += logprob
        total_words += n
    if total_words == 0:
        raise EmptyBatch("no scorable words in batch")
    return math.exp(-total_logprob / total_words)


def mean_length(sentences: Sequence[Sentence]) -> float:
    """Mean count of non-punctuation tokens."""
    if not sentences:
        raise EmptyBatch("no sentences")
    return sum(s.word_count() for s in sentences) / len(sentences)


def diversity(
    sentences: Sequence[Sentence], table: TfidfTable, lexicon: Lexicon
) -> float:
    """Mean tf-idf over non-stopword tokens; lower reads as more diverse.

    tf concentrates on repetition (count/length within the sentence), so a
    batch that reuses the same words scores higher than one spreading mass
    over distinct rare words.
    """
    if not sentences:
        raise EmptyBatch("no sentences")
    total = 0.0
    for sentence in sentences:
        words = sentence.word_tokens()
        scored = [t for t in words if t.lemma not in lexicon.stopwords]
        if not scored or not words:
            continue
        counts = Counter(t.lemma for t in words)
        value = sum(
            (counts[t.lemma] / len(words)) * table.idf_of(t.lemma) for t in scored
        ) / len(scored)
        total += value
    return total / len(sentences)


def srl_overlap(
    records: Sequence[GenerationRecord], parser: RoleParser
) -> dict[RoleLabel, float]:
    """Per-role % of role-labeled input concepts realized with that role.

    A concept counts when any output token sharing its lemma carries the
    same role in any frame of the output parse. Roles with no labeled input
    concepts are omitted rather than reported as 0.
    """
    if not records:
        raise EmptyBatch("no records")
    wanted = {role: 0 for role in OVERLAP_ROLES}
    matched = {role: 0 for role in OVERLAP_ROLES}
    for record in records:
        labeled = [item for item in record.input.items if item.role in wanted]
        if not labeled:
            continue
        try:
            parse = parser.parse(record.output)
        except NoVerbFound:
            parse = SRLParse(frames=())
        realized: dict[str, set[RoleLabel]] = {}
        for i, token in enumerate(record.output.tokens):
            for frame in parse.frames:
                role = frame.role_of(i)
                if role is not None:
                    realized.setdefault(token.lemma, set()).add(role)
        for item in labeled:
            wanted[item.role] += 1
            if item.role in realized.get(item.concept, ()):
                matched[item.role] += 1
    return {
        role: 100.0 * matched[role] / wanted[role]
        for role in OVERLAP_ROLES
        if wanted[role] > 0
    }


def report(
    records: Sequence[GenerationRecord],
    scorer: SentenceScorer,
    table: TfidfTable,
    parser: RoleParser,
    lexicon: Lexicon,
) -> MetricReport:
    outputs = [r.output for r in records]
    all_pct, any_pct = coverage(records)
    return MetricReport(
        perplexity=perplexity(outputs, scorer),
        coverage_all=all_pct,
        coverage_any=any_pct,
        mean_length=mean_length(outputs),
        diversity=diversity(outputs, table, lexicon),
        srl_overlap=srl_overlap(records, parser),
    )


def write_records(records: Iterable[GenerationRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            payload: dict = {
                "input": {"concepts": [item.concept for item in record.input.items]},
                "output": record.output.raw,
                "modelTag": record.model_tag,
            }
            roles = {
                item.concept: item.role.value
                for item in record.input.items
                if item.role is not None
            }
            if roles:
                payload["input"]["roles"] = roles
            if record.input.cefr is not None:
                payload["input"]["cefr"] = record.input.cefr.name
            fh.write(json.dumps(payload, sort_keys=True, ensure_ascii=False) + "\n")


def read_records(path: str | Path, lexicon: Lexicon) -> list[GenerationRecord]:
    records = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                payload = json.loads(line)
                spec = payload["input"]
                roles = spec.get("roles", {})
                items = tuple(
                    ControlItem(
                        concept=c,
                        role=RoleLabel(roles[c]) if c in roles else None,
                    )
                    for c in sorted(spec["concepts"])
                )
                cefr = CefrLevel[spec["cefr"]] if "cefr" in spec else None
                labeled = LabeledConceptSet(items=items, cefr=cefr)
                output = sentence_from_text(payload["output"], lexicon)
                records.append(
                    GenerationRecord(
                        input=labeled, output=output, model_tag=payload.get("modelTag", "")
                    )
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise PairFormatError(f"bad generation record: {exc}", line=line_no) from exc
    return records
