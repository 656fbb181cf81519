"""Corpus ingestion: normalization, tokenization, concept extraction, pair I/O.

The dataset unit is a :class:`ConceptSentencePair`, an unordered set of
content-word lemmas paired with the sentence they came from. Pairs are
admitted when their concept count lies in a configurable band (2 to 5 by
default) and are serialized one JSON object per line.
"""

from __future__ import annotations

import hashlib
import json
import logging
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import PairFormatError
from .lexicon import CONTENT_POS, OTHER, Lexicon

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    pos: str


@dataclass(frozen=True)
class Sentence:
    """A normalized sentence and its deterministic tokenization."""

    raw: str
    tokens: tuple[Token, ...]

    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]

    def lemmas(self) -> list[str]:
        return [t.lemma for t in self.tokens]

    def word_tokens(self) -> list[Token]:
        """Tokens that are words, excluding standalone punctuation."""
        return [t for t in self.tokens if not is_punctuation(t.surface)]

    def word_count(self) -> int:
        return len(self.word_tokens())


@dataclass(frozen=True)
class ConceptSentencePair:
    id: str
    concepts: frozenset[str]
    sentence: Sentence
    source: str = ""

    def __post_init__(self):
        if not self.concepts:
            raise ValueError("pair must have at least one concept")
        token_lemmas = {t.lemma for t in self.sentence.tokens}
        missing = self.concepts - token_lemmas
        if missing:
            raise ValueError(f"concepts not present in sentence: {sorted(missing)}")


def normalize_text(raw: str) -> str:
    """Lowercase, drop control characters, collapse whitespace runs, strip.

    Idempotent: applying it twice gives the same string.
    """
    out = []
    for ch in raw.lower():
        if ch.isspace():
            out.append(" ")
        elif unicodedata.category(ch) in ("Cc", "Cf"):
            continue
        else:
            out.append(ch)
    return " ".join("".join(out).split())


def is_punctuation(surface: str) -> bool:
    return bool(surface) and not any(c.isalnum() for c in surface)


def _split_chunk(chunk: str) -> list[str]:
    """Peel leading/trailing punctuation characters off a whitespace chunk."""
    if not chunk or is_punctuation(chunk):
        return [chunk] if chunk else []
    leading = []
    trailing = []
    start, end = 0, len(chunk)
    while start < end and not chunk[start].isalnum():
        leading.append(chunk[start])
        start += 1
    while end > start and not chunk[end - 1].isalnum():
        trailing.append(chunk[end - 1])
        end -= 1
    return leading + [chunk[start:end]] + list(reversed(trailing))


def tokenize(normalized: str, lexicon: Lexicon) -> Sentence:
    """Split normalized text into tokens with lemma and POS from the lexicon.

    Punctuation attached to a word becomes its own token. Unknown words keep
    their surface as lemma with POS OTHER.
    """
    tokens = []
    for chunk in normalized.split(" "):
        for piece in _split_chunk(chunk):
            if is_punctuation(piece):
                tokens.append(Token(surface=piece, lemma=piece, pos=OTHER))
                continue
            entry = lexicon.lookup(piece)
            if entry is None:
                tokens.append(Token(surface=piece, lemma=piece, pos=OTHER))
            else:
                tokens.append(Token(surface=piece, lemma=entry.lemma, pos=entry.pos))
    return Sentence(raw=normalized, tokens=tuple(tokens))


def sentence_from_text(raw: str, lexicon: Lexicon) -> Sentence:
    return tokenize(normalize_text(raw), lexicon)


def extract_concepts(sentence: Sentence, lexicon: Lexicon) -> frozenset[str]:
    """Deduplicated lemmas of noun/verb/adjective tokens, stopwords excluded."""
    return frozenset(
        t.lemma
        for t in sentence.tokens
        if t.pos in CONTENT_POS and not lexicon.is_stopword(t.lemma)
    )


def pair_id(normalized_text: str) -> str:
    return hashlib.sha1(normalized_text.encode("utf-8")).hexdigest()[:16]


def build_pairs(
    sentences: Iterable[Sentence],
    lexicon: Lexicon,
    min_concepts: int = 2,
    max_concepts: int = 5,
    source: str = "",
) -> list[ConceptSentencePair]:
    """One pair per admitted sentence, in input order.

    Sentences whose concept count falls outside [min_concepts, max_concepts]
    are dropped, as are duplicates by normalized text (first occurrence wins).
    """
    if min_concepts < 1 or max_concepts < min_concepts:
        raise ValueError("need 1 <= min_concepts <= max_concepts")
    pairs = []
    seen: set[str] = set()
    for sentence in sentences:
        if sentence.raw in seen:
            continue
        seen.add(sentence.raw)
        concepts = extract_concepts(sentence, lexicon)
        if not (min_concepts <= len(concepts) <= max_concepts):
            continue
        pairs.append(
            ConceptSentencePair(
                id=pair_id(sentence.raw), concepts=concepts, sentence=sentence, source=source
            )
        )
    return pairs


def pairs_from_text(lines: Iterable[str], lexicon: Lexicon, source: str = "", **kwargs) -> list[ConceptSentencePair]:
    """Normalize, tokenize and pair raw text lines in one step."""
    sentences = [sentence_from_text(line, lexicon) for line in lines if line.strip()]
    return build_pairs(sentences, lexicon, source=source, **kwargs)


def write_pairs(pairs: Iterable[ConceptSentencePair], path: str | Path) -> None:
    """One JSON object per line: id, concepts (sorted), sentence, source."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for pair in pairs:
            record = {
                "id": pair.id,
                "concepts": sorted(pair.concepts),
                "sentence": pair.sentence.raw,
                "source": pair.source,
            }
            fh.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")


def read_pairs(path: str | Path, lexicon: Lexicon, strict: bool = True) -> list[ConceptSentencePair]:
    """Read pairs back, re-tokenizing sentences against the given lexicon.

    Malformed records raise :class:`PairFormatError` with their line number in
    strict mode and are skipped with a logged warning otherwise.
    """
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                pairs.append(_parse_record(line, lexicon))
            except (ValueError, KeyError, TypeError) as exc:
                if strict:
                    raise PairFormatError(str(exc), line=lineno) from exc
                log.warning("skipping malformed record at line %d: %s", lineno, exc)
    return pairs


def _parse_record(line: str, lexicon: Lexicon) -> ConceptSentencePair:
    record = json.loads(line)
    if not isinstance(record, dict):
        raise ValueError("record is not an object")
    for key in ("id", "concepts", "sentence", "source"):
        if key not in record:
            raise ValueError(f"missing field {key!r}")
    if not isinstance(record["concepts"], list) or not all(isinstance(c, str) for c in record["concepts"]):
        raise ValueError("concepts must be an array of strings")
    if not isinstance(record["sentence"], str) or not isinstance(record["id"], str):
        raise ValueError("id and sentence must be strings")
    sentence = tokenize(normalize_text(record["sentence"]), lexicon)
    return ConceptSentencePair(
        id=record["id"],
        concepts=frozenset(record["concepts"]),
        sentence=sentence,
        source=str(record["source"]),
    )
