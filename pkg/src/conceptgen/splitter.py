"""Frequency-stratified dataset splitting.

Concept-set frequency is the sum of each member concept's occurrence count
over the whole dataset. The high/low test sets are sampled uniformly from the
top and bottom frequency deciles; the remainder is shuffled into train and
validation. All randomness flows through one seeded Fisher-Yates shuffle so
splits are reproducible byte for byte.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import ConceptSentencePair
from .errors import InsufficientData

_EPS = 1e-9  # guards ceil/floor against float noise in fraction * n


def concept_frequencies(pairs: Iterable[ConceptSentencePair]) -> Counter[str]:
    """counts[lemma] = number of pairs whose concept set contains lemma."""
    counts: Counter[str] = Counter()
    for pair in pairs:
        counts.update(pair.concepts)
    return counts


def set_frequency(concepts: Iterable[str], table: Counter[str]) -> int:
    """Sum of per-concept counts, 0 for lemmas absent from the table."""
    return sum(table[c] for c in concepts)


@dataclass(frozen=True)
class SplitSpec:
    high_fraction: float = 0.10
    low_fraction: float = 0.10
    test_per_stratum: int = 500
    val_fraction: float = 0.10
    seed: int = 13

    def __post_init__(self):
        if not (0 <= self.high_fraction <= 1 and 0 <= self.low_fraction <= 1):
            raise ValueError("stratum fractions must lie in [0, 1]")
        if not 0 <= self.val_fraction < 1:
            raise ValueError("val_fraction must lie in [0, 1)")
        if self.test_per_stratum < 0:
            raise ValueError("test_per_stratum must be nonnegative")


@dataclass
class DatasetSplit:
    train: list[ConceptSentencePair]
    validation: list[ConceptSentencePair]
    test_high: list[ConceptSentencePair]
    test_low: list[ConceptSentencePair]
    spec: SplitSpec

    def partitions(self) -> dict[str, list[ConceptSentencePair]]:
        return {
            "train": self.train,
            "validation": self.validation,
            "test_high": self.test_high,
            "test_low": self.test_low,
        }


def _shuffled(items: Sequence, rng: random.Random) -> list:
    # Fisher-Yates driven only by rng.random(), so the sampling algorithm is
    # pinned by this module rather than by stdlib internals.
    out = list(items)
    for i in range(len(out) - 1, 0, -1):
        j = int(rng.random() * (i + 1))
        out[i], out[j] = out[j], out[i]
    return out


def stratified_split(pairs: Sequence[ConceptSentencePair], spec: SplitSpec) -> DatasetSplit:
    """Partition pairs into train/validation/test_high/test_low.

    Pairs are ordered by (set frequency, id); the top ``high_fraction`` and
    bottom ``low_fraction`` form candidate strata from which
    ``test_per_stratum`` pairs are drawn uniformly without replacement. The
    rest is shuffled and split ``val_fraction`` / remainder.

    Raises :class:`InsufficientData` when a stratum cannot supply the
    requested test samples.
    """
    table = concept_frequencies(pairs)
    ordered = sorted(pairs, key=lambda p: (set_frequency(p.concepts, table), p.id))
    n = len(ordered)
    n_high = math.ceil(spec.high_fraction * n - _EPS)
    n_low = math.ceil(spec.low_fraction * n - _EPS)
    if n_high + n_low > n:
        raise InsufficientData(f"strata overlap: {n_high} + {n_low} candidates from {n} pairs")
    for name, size in (("high", n_high), ("low", n_low)):
        if size < spec.test_per_stratum:
            raise InsufficientData(
                f"{name} stratum has {size} pairs, need {spec.test_per_stratum}"
            )

    rng = random.Random(spec.seed)
    low_candidates = ordered[:n_low]
    high_candidates = ordered[n - n_high :]
    test_high = _shuffled(high_candidates, rng)[: spec.test_per_stratum]
    test_low = _shuffled(low_candidates, rng)[: spec.test_per_stratum]

    taken = {p.id for p in test_high} | {p.id for p in test_low}
    remainder = [p for p in ordered if p.id not in taken]
    remainder = _shuffled(remainder, rng)
    n_val = int(spec.val_fraction * len(remainder) + 0.5)
    validation = remainder[:n_val]
    train = remainder[n_val:]
    return DatasetSplit(train=train, validation=validation, test_high=test_high, test_low=test_low, spec=spec)
