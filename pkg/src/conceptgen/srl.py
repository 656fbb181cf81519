"""Shallow semantic role labeling for simple clauses.

The built-in parser targets the clause shape ``(NP) (AUX)* V (NP) (PP|ADVP)*``
and produces one frame per main verb. Every token in a matched span carries
the span's role, so multi-word arguments like "the small dog" label all three
tokens ARG0. Sentences outside this shape still parse as long as they contain
a verb; unmatched tokens simply carry no role.

An external labeler can be swapped in through the :class:`RoleParser`
protocol, with :func:`read_parses` / :func:`write_parses` as the JSONL
exchange format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Protocol

from .corpus import Sentence, pair_id
from .controls import (
    ControlItem,
    LabeledConceptSet,
    RoleLabel,
    role_rank,
)
from .errors import NoVerbFound, PairFormatError
from .lexicon import ADJ, NOUN, OTHER, VERB

AUXILIARIES = frozenset(
    """
    am is are was were be been being
    have has had having
    do does did doing
    will would shall should can could may might must
    """.split()
)

DETERMINERS = frozenset(
    "the a an this that these those my your his her its our their some any no every each".split()
)

PREPOSITIONS = frozenset(
    """
    in on at with from by for to of under over near behind through
    during into between about after before above below across around
    """.split()
)

ADVERBS = frozenset(
    """
    yesterday today tomorrow often always never sometimes usually
    again away together alone here there quickly slowly quietly
    carefully suddenly soon early late
    """.split()
)

CONJUNCTIONS = frozenset(
    "and or but then because although while when since if whereas that which who".split()
)


@dataclass(frozen=True)
class SRLFrame:
    """Role assignments of one clause, keyed by token index."""

    verb_index: int
    assignments: Mapping[int, RoleLabel] = field(default_factory=dict)

    def __post_init__(self):
        if self.assignments.get(self.verb_index) != RoleLabel.V:
            raise ValueError("frame verb must be assigned role V")

    def role_of(self, index: int) -> RoleLabel | None:
        return self.assignments.get(index)


@dataclass(frozen=True)
class SRLParse:
    frames: tuple[SRLFrame, ...]


class RoleParser(Protocol):
    def parse(self, sentence: Sentence) -> SRLParse: ...


def _is_adverb(token) -> bool:
    if token.pos != OTHER:
        return False
    surface = token.surface
    return surface in ADVERBS or (surface.endswith("ly") and len(surface) > 4)


def _noun_chunks(sentence: Sentence) -> list[tuple[int, int]]:
    """Maximal ``det? adj* noun+`` spans as (start, end) inclusive."""
    tokens = sentence.tokens
    chunks = []
    i = 0
    while i < len(tokens):
        if tokens[i].pos != NOUN:
            i += 1
            continue
        end = i
        while end + 1 < len(tokens) and tokens[end + 1].pos == NOUN:
            end += 1
        start = i
        while start > 0 and tokens[start - 1].pos == ADJ:
            start -= 1
        if start > 0 and tokens[start - 1].surface in DETERMINERS:
            start -= 1
        chunks.append((start, end))
        i = end + 1
    return chunks


def _verb_runs(sentence: Sentence) -> list[tuple[int, int]]:
    """Maximal runs of verb tokens; the last token of a run is the main verb."""
    runs = []
    i = 0
    tokens = sentence.tokens
    while i < len(tokens):
        if tokens[i].pos != VERB:
            i += 1
            continue
        start = i
        while i + 1 < len(tokens) and tokens[i + 1].pos == VERB:
            i += 1
        runs.append((start, i))
        i += 1
    return runs


class RuleBasedRoleParser:
    """Deterministic pattern parser for subject-verb-object clauses."""

    def parse(self, sentence: Sentence) -> SRLParse:
        tokens = sentence.tokens
        runs = _verb_runs(sentence)
        if not runs:
            raise NoVerbFound(f"no verb token in: {sentence.raw!r}")
        chunks = _noun_chunks(sentence)
        boundaries = {
            i for i, t in enumerate(tokens) if t.pos not in (NOUN, ADJ, VERB) and t.surface in CONJUNCTIONS
        }

        frames = []
        for n, (run_start, run_end) in enumerate(runs):
            left = runs[n - 1][1] + 1 if n > 0 else 0
            for b in boundaries:
                if left <= b < run_start:
                    left = b + 1
            right = runs[n + 1][0] - 1 if n + 1 < len(runs) else len(tokens) - 1
            for b in sorted(boundaries):
                if run_end < b <= right:
                    right = b - 1
                    break

            assignments: dict[int, RoleLabel] = {run_end: RoleLabel.V}

            subject = None
            for start, end in chunks:
                if start >= left and end < run_start:
                    subject = (start, end)
            if subject is not None:
                for i in range(subject[0], subject[1] + 1):
                    assignments[i] = RoleLabel.ARG0

            object_seen = False
            for start, end in chunks:
                if start <= run_end or end > right:
                    continue
                prep = start > 0 and tokens[start - 1].surface in PREPOSITIONS
                if prep:
                    for i in range(start - 1, end + 1):
                        assignments[i] = RoleLabel.ARGM
                elif not object_seen:
                    for i in range(start, end + 1):
                        assignments[i] = RoleLabel.ARG1
                    object_seen = True
                else:
                    for i in range(start, end + 1):
                        assignments[i] = RoleLabel.ARG2

            for i in range(left, right + 1):
                if i not in assignments and _is_adverb(tokens[i]):
                    assignments[i] = RoleLabel.ARGM

            frames.append(SRLFrame(verb_index=run_end, assignments=assignments))
        return SRLParse(frames=tuple(frames))


_DEFAULT_PARSER = RuleBasedRoleParser()


def parse_roles(sentence: Sentence) -> SRLParse:
    """Parse with the built-in rule parser."""
    return _DEFAULT_PARSER.parse(sentence)


def align_roles(
    parse: SRLParse, concepts: Iterable[str], sentence: Sentence
) -> LabeledConceptSet:
    """Label each concept with the role its tokens carry in the parse.

    When a concept matches several labeled tokens, the highest-precedence
    role wins (V before ARG0 before ARG1, ...); ties go to the earliest
    frame. Concepts matching no labeled token get OTHER. Items come back in
    lemma order, the same canonical order used for unannotated inputs, so
    annotations are the only difference between the two input styles.
    """
    items = []
    for concept in sorted(set(concepts)):
        token_indices = [i for i, t in enumerate(sentence.tokens) if t.lemma == concept]
        best: tuple[int, int] | None = None
        best_role = RoleLabel.OTHER
        for frame_order, frame in enumerate(parse.frames):
            for i in token_indices:
                role = frame.role_of(i)
                if role is None:
                    continue
                key = (role_rank(role), frame_order)
                if best is None or key < best:
                    best = key
                    best_role = role
        items.append(ControlItem(concept=concept, role=best_role))
    return LabeledConceptSet(items=tuple(items))


class ExternalRoleParser:
    """Pre-computed parses keyed by sentence id (see :func:`read_parses`)."""

    def __init__(self, parses: Mapping[str, SRLParse]):
        self._parses = dict(parses)

    def parse(self, sentence: Sentence) -> SRLParse:
        key = pair_id(sentence.raw)
        if key not in self._parses:
            raise KeyError(f"no stored parse for sentence id {key}")
        return self._parses[key]


def write_parses(parses: Mapping[str, SRLParse], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for sentence_id in sorted(parses):
            frames = [
                {
                    "verbIndex": frame.verb_index,
                    "assignments": {
                        str(i): role.value for i, role in sorted(frame.assignments.items())
                    },
                }
                for frame in parses[sentence_id].frames
            ]
            record = {"sentenceId": sentence_id, "frames": frames}
            fh.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")


def read_parses(path: str | Path) -> dict[str, SRLParse]:
    parses: dict[str, SRLParse] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                frames = tuple(
                    SRLFrame(
                        verb_index=f["verbIndex"],
                        assignments={int(i): RoleLabel(r) for i, r in f["assignments"].items()},
                    )
                    for f in record["frames"]
                )
                parses[record["sentenceId"]] = SRLParse(frames=frames)
            except (KeyError, TypeError, ValueError) as exc:
                raise PairFormatError(f"bad parse record: {exc}", line=line_no) from exc
    return parses
