"""Trigram language model with modified interpolated Kneser-Ney smoothing.

Sentence probability is the product over word positions of
P(w_i | w_{i-2}, w_{i-1}) with start-padding contexts; no end-of-sentence
factor, so each position is a proper distribution over the closed vocabulary
(observed words plus the unknown word). Lower orders use continuation
counts; discounts follow the count-of-counts estimates with a 0.75 fallback
when those are degenerate.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from pathlib import Path
from typing import Iterable, Protocol, Sequence

from sklearn.base import BaseEstimator

from ..corpus import Sentence
from ..errors import EmptyDataset

BOS = "<s>"
UNK = "<unk>"


class SentenceScorer(Protocol):
    """Returns (total natural-log probability, scored word count)."""

    def score(self, sentence: Sentence | Sequence[str]) -> tuple[float, int]: ...


def _words(sentence: Sentence | Sequence[str]) -> list[str]:
    if isinstance(sentence, Sentence):
        return [t.surface for t in sentence.word_tokens()]
    return list(sentence)


def _discounts(counts: Iterable[int]) -> tuple[float, float, float]:
    """Per-bucket discounts D1, D2, D3+ from count-of-counts."""
    of_count = Counter()
    for c in counts:
        if 1 <= c <= 4:
            of_count[c] += 1
    n1, n2, n3, n4 = (of_count[i] for i in (1, 2, 3, 4))
    if not (n1 and n2 and n3 and n4):
        return 0.75, 0.75, 0.75
    y = n1 / (n1 + 2 * n2)
    d1 = 1 - 2 * y * n2 / n1
    d2 = 2 - 3 * y * n3 / n2
    d3 = 3 - 4 * y * n4 / n3
    if not (0 < d1 <= 1 and 0 < d2 <= 2 and 0 < d3 <= 3):
        return 0.75, 0.75, 0.75
    return d1, d2, d3


def _discount_for(count: int, d: tuple[float, float, float]) -> float:
    if count >= 3:
        return d[2]
    if count == 2:
        return d[1]
    return d[0]


class TrigramScorer(BaseEstimator):
    """Fit on training sentences; score() any sentence, unknowns via UNK."""

    def fit(self, sentences: Iterable[Sentence | Sequence[str]]):
        trigrams: Counter[tuple[str, str, str]] = Counter()
        observed: set[str] = set()
        n_sentences = 0
        for sentence in sentences:
            words = [BOS, BOS] + [w if w != BOS else UNK for w in _words(sentence)]
            n_sentences += 1
            observed.update(words[2:])
            for i in range(2, len(words)):
                trigrams[(words[i - 2], words[i - 1], words[i])] += 1
        if n_sentences == 0 or not observed:
            raise EmptyDataset("no sentences to fit the scorer on")
        observed.add(UNK)
        self.vocabulary_ = tuple(sorted(observed))
        self.trigram_counts_ = dict(trigrams)
        self._index()
        return self

    def _index(self):
        """Derive continuation counts, totals, and discounts from trigrams."""
        tri = self.trigram_counts_
        self._tri_context_total = Counter()
        self._tri_context_buckets: dict[tuple[str, str], list[int]] = {}
        bigram_continuation: Counter[tuple[str, str]] = Counter()
        seen_tri_types: set[tuple[str, str, str]] = set()
        for (u, v, w), c in tri.items():
            self._tri_context_total[(u, v)] += c
            self._tri_context_buckets.setdefault((u, v), [0, 0, 0])[
                min(c, 3) - 1
            ] += 1
            if (u, v, w) not in seen_tri_types:
                seen_tri_types.add((u, v, w))
                bigram_continuation[(v, w)] += 1
        self._bigram_cont = dict(bigram_continuation)
        self._bi_context_total = Counter()
        self._bi_context_buckets: dict[str, list[int]] = {}
        unigram_continuation: Counter[str] = Counter()
        for (v, w), c in bigram_continuation.items():
            self._bi_context_total[v] += c
            self._bi_context_buckets.setdefault(v, [0, 0, 0])[min(c, 3) - 1] += 1
            unigram_continuation[w] += 1
        self._unigram_cont = dict(unigram_continuation)
        self._uni_total = sum(unigram_continuation.values())
        self._uni_buckets = [0, 0, 0]
        for c in unigram_continuation.values():
            self._uni_buckets[min(c, 3) - 1] += 1
        self._d_tri = _discounts(tri.values())
        self._d_bi = _discounts(bigram_continuation.values())
        self._d_uni = _discounts(unigram_continuation.values())

    def _check_fitted(self):
        if not hasattr(self, "trigram_counts_"):
            raise RuntimeError("scorer is not fitted")

    def _p_unigram(self, w: str) -> float:
        v_size = len(self.vocabulary_)
        if self._uni_total == 0:
            return 1.0 / v_size
        c = self._unigram_cont.get(w, 0)
        d = self._d_uni
        head = max(c - _discount_for(c, d), 0.0) / self._uni_total
        n1, n2, n3 = self._uni_buckets
        gamma = (d[0] * n1 + d[1] * n2 + d[2] * n3) / self._uni_total
        return head + gamma / v_size

    def _p_bigram(self, v: str, w: str) -> float:
        total = self._bi_context_total.get(v, 0)
        if total == 0:
            return self._p_unigram(w)
        c = self._bigram_cont.get((v, w), 0)
        d = self._d_bi
        head = max(c - _discount_for(c, d), 0.0) / total
        n1, n2, n3 = self._bi_context_buckets[v]
        gamma = (d[0] * n1 + d[1] * n2 + d[2] * n3) / total
        return head + gamma * self._p_unigram(w)

    def probability(self, context: tuple[str, str], word: str) -> float:
        """P(word | context) over the closed vocabulary."""
        self._check_fitted()
        known = set(self.vocabulary_)
        u, v = (t if (t in known or t == BOS) else UNK for t in context)
        w = word if word in known else UNK
        total = self._tri_context_total.get((u, v), 0)
        if total == 0:
            return self._p_bigram(v, w)
        c = self.trigram_counts_.get((u, v, w), 0)
        d = self._d_tri
        head = max(c - _discount_for(c, d), 0.0) / total
        n1, n2, n3 = self._tri_context_buckets[(u, v)]
        gamma = (d[0] * n1 + d[1] * n2 + d[2] * n3) / total
        return head + gamma * self._p_bigram(v, w)

    def score(self, sentence: Sentence | Sequence[str]) -> tuple[float, int]:
        self._check_fitted()
        words = _words(sentence)
        history = [BOS, BOS] + words
        logprob = 0.0
        for i in range(2, len(history)):
            logprob += math.log(self.probability((history[i - 2], history[i - 1]), history[i]))
        return logprob, len(words)

    def save(self, path: str | Path) -> None:
        self._check_fitted()
        payload = {
            "version": 1,
            "vocabulary": list(self.vocabulary_),
            "trigrams": {" ".join(k): c for k, c in self.trigram_counts_.items()},
        }
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True, ensure_ascii=False)

    @classmethod
    def load(cls, path: str | Path) -> "TrigramScorer":
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        scorer = cls()
        scorer.vocabulary_ = tuple(payload["vocabulary"])
        scorer.trigram_counts_ = {
            tuple(k.split(" ")): c for k, c in payload["trigrams"].items()
        }
        scorer._index()
        return scorer


class UniformScorer:
    """Assigns every word probability 1/V; perplexity is exactly V."""

    def __init__(self, vocabulary_size: int):
        if vocabulary_size < 1:
            raise ValueError("vocabulary_size must be >= 1")
        self.vocabulary_size = vocabulary_size

    def score(self, sentence: Sentence | Sequence[str]) -> tuple[float, int]:
        n = len(_words(sentence))
        return -n * math.log(self.vocabulary_size), n
