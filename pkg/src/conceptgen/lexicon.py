"""Surface-form lexicon: lemma, part of speech, and corpus frequency lookup.

The lexicon is the single source of lemmatization and POS decisions for the
whole toolkit. Entries map an exact surface form to its lemma; out-of-lexicon
surfaces fall back to deterministic suffix stripping against known lemmas.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

NOUN = "NOUN"
VERB = "VERB"
ADJ = "ADJ"
OTHER = "OTHER"

POS_TAGS = frozenset({NOUN, VERB, ADJ, OTHER})
CONTENT_POS = frozenset({NOUN, VERB, ADJ})

_VOWELS = "aeiou"


@dataclass(frozen=True)
class LexiconEntry:
    lemma: str
    pos: str
    frequency: int

    def __post_init__(self):
        if not self.lemma or self.lemma != self.lemma.lower() or any(c.isspace() for c in self.lemma):
            raise ValueError(f"lemma must be lowercase, nonempty, whitespace-free: {self.lemma!r}")
        if self.pos not in POS_TAGS:
            raise ValueError(f"unknown POS tag {self.pos!r}")
        if self.frequency < 0:
            raise ValueError("frequency must be nonnegative")


class Lexicon:
    """Maps surface forms to (lemma, pos, frequency) plus a stopword set."""

    def __init__(self, entries: dict[str, LexiconEntry], stopwords: set[str] | frozenset[str] = frozenset()):
        self.entries = dict(entries)
        self.stopwords = frozenset(w.lower() for w in stopwords)
        # lemma -> entry of the base form when present, else first entry seen
        self._lemma_index: dict[str, LexiconEntry] = {}
        for surface, entry in sorted(self.entries.items()):
            known = self._lemma_index.get(entry.lemma)
            if known is None or surface == entry.lemma:
                self._lemma_index[entry.lemma] = entry
        self._freqs_sorted = sorted(e.frequency for e in self._lemma_index.values())

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, surface: str) -> bool:
        return surface in self.entries

    def is_stopword(self, word: str) -> bool:
        return word.lower() in self.stopwords

    def lookup(self, surface: str) -> LexiconEntry | None:
        """Exact entry lookup, then suffix-stripping fallback against known lemmas."""
        entry = self.entries.get(surface)
        if entry is not None:
            return entry
        for candidate in _strip_suffixes(surface):
            hit = self._lemma_index.get(candidate)
            if hit is not None:
                return hit
        return None

    def lemma_frequency(self, lemma: str) -> int:
        hit = self._lemma_index.get(lemma)
        return hit.frequency if hit is not None else 0

    def rarity(self, lemma: str) -> float:
        """1 - percentile rank of the lemma's frequency over all lexicon lemmas.

        Unknown lemmas score 1.0 (maximally rare). Values lie in [0, 1].
        """
        if not self._freqs_sorted:
            return 1.0
        freq = self.lemma_frequency(lemma)
        if freq == 0 and lemma not in self._lemma_index:
            return 1.0
        rank = bisect.bisect_right(self._freqs_sorted, freq)
        return 1.0 - rank / len(self._freqs_sorted)

    @classmethod
    def load(cls, path: str | Path, stopwords_path: str | Path | None = None) -> "Lexicon":
        """Read entries from a TSV of ``surface<TAB>lemma<TAB>pos<TAB>frequency`` lines.

        Blank lines and ``#`` comments are ignored. Stopwords come one per line
        from ``stopwords_path`` when given.
        """
        entries = {}
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 4:
                    raise ValueError(f"{path}:{lineno}: expected 4 tab-separated fields, got {len(parts)}")
                surface, lemma, pos, freq = parts
                entries[surface] = LexiconEntry(lemma=lemma, pos=pos, frequency=int(freq))
        stopwords: set[str] = set()
        if stopwords_path is not None:
            with open(stopwords_path, encoding="utf-8") as fh:
                stopwords = {w.strip() for w in fh if w.strip() and not w.startswith("#")}
        return cls(entries, stopwords)

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for surface in sorted(self.entries):
                e = self.entries[surface]
                fh.write(f"{surface}\t{e.lemma}\t{e.pos}\t{e.frequency}\n")


def _strip_suffixes(surface: str) -> list[str]:
    """Candidate stems for an unknown surface, most specific first.

    Handles -s/-es/-ies plurals and third person, -ed with e-restoration and
    consonant doubling, and -ing with the same two repairs.
    """
    candidates: list[str] = []

    def add(c: str):
        if len(c) >= 2 and c not in candidates:
            candidates.append(c)

    if surface.endswith("ies") and len(surface) > 4:
        add(surface[:-3] + "y")
    if surface.endswith("es"):
        add(surface[:-2])
        add(surface[:-1])
    if surface.endswith("s") and not surface.endswith("ss"):
        add(surface[:-1])
    if surface.endswith("ied") and len(surface) > 4:
        add(surface[:-3] + "y")
    if surface.endswith("ed"):
        stem = surface[:-2]
        add(stem)
        add(surface[:-1])  # e-restoration: chased -> chase
        if len(stem) >= 3 and stem[-1] == stem[-2] and stem[-1] not in _VOWELS:
            add(stem[:-1])  # doubling: stopped -> stop
    if surface.endswith("ing") and len(surface) > 4:
        stem = surface[:-3]
        add(stem)
        add(stem + "e")  # chasing -> chase
        if len(stem) >= 3 and stem[-1] == stem[-2] and stem[-1] not in _VOWELS:
            add(stem[:-1])  # running -> run
    return candidates


def default_lexicon() -> Lexicon:
    """The bundled general-English lexicon used by the toy corpora and tests."""
    data = resources.files("conceptgen.data")
    with resources.as_file(data / "lexicon.tsv") as lex_path, resources.as_file(data / "stopwords.txt") as stop_path:
        return Lexicon.load(lex_path, stop_path)
