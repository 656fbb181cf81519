"""Inverse document frequency table over lemmas.

idf(w) = ln(docCount / (1 + docFreq(w))), floored at 0. Each training
sentence counts as one document by default; a table built from any other
corpus (e.g. an encyclopedia dump) can be loaded from the same file format.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from ..corpus import Sentence
from ..errors import EmptyDataset, PairFormatError


@dataclass(frozen=True)
class TfidfTable:
    corpus_doc_count: int
    idf: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.corpus_doc_count < 1:
            raise ValueError("corpus_doc_count must be >= 1")
        bad = [w for w, v in self.idf.items() if v < 0]
        if bad:
            raise ValueError(f"negative idf for {bad[:5]}")

    def idf_of(self, lemma: str) -> float:
        value = self.idf.get(lemma)
        if value is not None:
            return value
        # unseen lemma: docFreq 0 under the same formula
        return max(0.0, math.log(self.corpus_doc_count))

    @classmethod
    def build(cls, documents: Iterable[Sentence]) -> "TfidfTable":
        doc_freq: dict[str, int] = {}
        n_docs = 0
        for sentence in documents:
            n_docs += 1
            for lemma in set(t.lemma for t in sentence.word_tokens()):
                doc_freq[lemma] = doc_freq.get(lemma, 0) + 1
        if n_docs == 0:
            raise EmptyDataset("no documents to build the table from")
        idf = {
            w: max(0.0, math.log(n_docs / (1 + df))) for w, df in doc_freq.items()
        }
        return cls(corpus_doc_count=n_docs, idf=idf)

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"#corpus_doc_count\t{self.corpus_doc_count}\n")
            for lemma in sorted(self.idf):
                fh.write(f"{lemma}\t{self.idf[lemma]:.10g}\n")

    @classmethod
    def load(cls, path: str | Path) -> "TfidfTable":
        doc_count = None
        idf: dict[str, float] = {}
        with open(path, "r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                line = line.rstrip("\n")
                if not line:
                    continue
                if line.startswith("#corpus_doc_count\t"):
                    doc_count = int(line.split("\t")[1])
                    continue
                if line.startswith("#"):
                    continue
                parts = line.split("\t")
                if len(parts) != 2:
                    raise PairFormatError("expected lemma<TAB>idf", line=line_no)
                idf[parts[0]] = float(parts[1])
        if doc_count is None:
            raise PairFormatError("missing #corpus_doc_count header", line=0)
        return cls(corpus_doc_count=doc_count, idf=idf)
