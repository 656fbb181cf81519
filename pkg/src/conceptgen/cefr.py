"""Proficiency-level scoring and level control codes.

Sentences get a CEFR level (A1..C2) from a transparent linear proxy over
four surface features, binned by thresholds that were calibrated once on the
bundled hand-labeled file and then frozen. An external predictor can replace
the proxy through the :class:`CefrPredictor` protocol; everything downstream
only needs a consistent ordinal signal.
"""

from __future__ import annotations

import logging
from bisect import bisect_right
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Protocol, Sequence

from sklearn.base import BaseEstimator

from .controls import CefrLevel, LabeledConceptSet, plain_controls
from .corpus import ConceptSentencePair, Sentence, sentence_from_text
from .errors import EmptySentence, PairFormatError
from .lexicon import CONTENT_POS, Lexicon, default_lexicon

logger = logging.getLogger(__name__)

SUBORDINATORS = frozenset(
    """
    because although though while whereas since unless until whether
    that which who whom whose when if
    however therefore moreover furthermore nevertheless consequently
    notwithstanding despite
    """.split()
)

LENGTH_WEIGHT = 0.04
RARITY_WEIGHT = 0.5
WORD_LENGTH_WEIGHT = 0.05
SUBORDINATOR_WEIGHT = 0.15

# frozen output of fit_default_scorer on the bundled calibration file
DEFAULT_THRESHOLDS = (0.575977, 0.751593, 1.015656, 1.336675, 1.716798)

CALIBRATION_RESOURCE = "cefr_calibration.tsv"


@dataclass(frozen=True)
class CefrFeatures:
    length_words: int
    mean_word_rarity: float
    mean_word_length_chars: float
    subordinator_count: int

    def __post_init__(self):
        if self.length_words < 0 or self.subordinator_count < 0:
            raise ValueError("counts must be nonnegative")
        if not 0.0 <= self.mean_word_rarity <= 1.0:
            raise ValueError(f"mean_word_rarity out of [0,1]: {self.mean_word_rarity}")
        if self.mean_word_length_chars < 0:
            raise ValueError("mean_word_length_chars must be nonnegative")


def extract_features(sentence: Sentence, lexicon: Lexicon) -> CefrFeatures:
    words = sentence.word_tokens()
    content = [
        t for t in words if t.pos in CONTENT_POS and t.lemma not in lexicon.stopwords
    ]
    if not content:
        raise EmptySentence(f"no content tokens in: {sentence.raw!r}")
    rarity = sum(lexicon.rarity(t.lemma) for t in content) / len(content)
    mean_chars = sum(len(t.surface) for t in words) / len(words)
    subordinators = sum(1 for t in words if t.surface in SUBORDINATORS)
    return CefrFeatures(
        length_words=len(words),
        mean_word_rarity=rarity,
        mean_word_length_chars=mean_chars,
        subordinator_count=subordinators,
    )


def feature_score(features: CefrFeatures) -> float:
    return (
        LENGTH_WEIGHT * features.length_words
        + RARITY_WEIGHT * features.mean_word_rarity
        + WORD_LENGTH_WEIGHT * features.mean_word_length_chars
        + SUBORDINATOR_WEIGHT * features.subordinator_count
    )


def bin_score(score: float, thresholds: Sequence[float]) -> CefrLevel:
    if len(thresholds) != 5 or list(thresholds) != sorted(thresholds):
        raise ValueError("thresholds must be 5 nondecreasing values")
    return CefrLevel(bisect_right(list(thresholds), score) + 1)


class CefrPredictor(Protocol):
    def predict_level(self, sentence: Sentence) -> CefrLevel: ...


class CefrScorer(BaseEstimator):
    """Linear proxy scorer with threshold binning.

    Follows the usual estimator conventions: constructor arguments are stored
    untouched, `fit` learns `thresholds_` from labeled sentences, `predict`
    maps sentences to levels. Unfitted instances fall back to the frozen
    default thresholds, so the scorer is usable out of the box.
    """

    def __init__(self, lexicon: Lexicon | None = None, thresholds: Sequence[float] | None = None):
        self.lexicon = lexicon
        self.thresholds = thresholds

    def _resolved_lexicon(self) -> Lexicon:
        return self.lexicon if self.lexicon is not None else default_lexicon()

    def _resolved_thresholds(self) -> tuple[float, ...]:
        fitted = getattr(self, "thresholds_", None)
        if fitted is not None:
            return fitted
        if self.thresholds is not None:
            return tuple(self.thresholds)
        return DEFAULT_THRESHOLDS

    def _as_sentence(self, item: Sentence | str) -> Sentence:
        if isinstance(item, Sentence):
            return item
        return sentence_from_text(item, self._resolved_lexicon())

    def score_value(self, item: Sentence | str) -> float:
        sentence = self._as_sentence(item)
        return feature_score(extract_features(sentence, self._resolved_lexicon()))

    def fit(self, X: Sequence[Sentence | str], y: Sequence[CefrLevel | str]):
        levels = [CefrLevel[v] if isinstance(v, str) else CefrLevel(v) for v in y]
        if len(X) != len(levels):
            raise ValueError(f"got {len(X)} sentences but {len(levels)} labels")
        if not levels:
            raise ValueError("cannot calibrate on an empty sample")
        scores = [self.score_value(item) for item in X]
        self.thresholds_ = calibrate_thresholds(scores, levels)
        return self

    def predict_level(self, item: Sentence | str) -> CefrLevel:
        return bin_score(self.score_value(item), self._resolved_thresholds())

    def predict(self, X: Sequence[Sentence | str]) -> list[CefrLevel]:
        return [self.predict_level(item) for item in X]

    def score(self, X: Sequence[Sentence | str], y: Sequence[CefrLevel | str]) -> float:
        levels = [CefrLevel[v] if isinstance(v, str) else CefrLevel(v) for v in y]
        predictions = self.predict(X)
        return sum(p == t for p, t in zip(predictions, levels)) / len(levels)


def calibrate_thresholds(
    scores: Sequence[float], levels: Sequence[CefrLevel]
) -> tuple[float, ...]:
    """Fit five bin boundaries maximizing exact-match accuracy.

    Dynamic program over distinct score values: partition them into six
    contiguous (possibly empty) segments, one per level in order, and place
    each boundary at the midpoint between neighboring scores. Monotone by
    construction.
    """
    if not scores or len(scores) != len(levels):
        raise ValueError("scores and levels must be equal-length and nonempty")
    ordered = sorted(zip(scores, levels))
    distinct: list[float] = []
    counts: list[list[int]] = []
    for s, lv in ordered:
        if not distinct or s != distinct[-1]:
            distinct.append(s)
            counts.append([0] * 6)
        counts[-1][int(lv) - 1] += 1
    m = len(distinct)

    prefix = [[0] * (m + 1) for _ in range(6)]
    for k in range(6):
        for i in range(m):
            prefix[k][i + 1] = prefix[k][i] + counts[i][k]

    neg = float("-inf")
    dp = [[neg] * (m + 1) for _ in range(6)]
    choice = [[0] * (m + 1) for _ in range(6)]
    for i in range(m + 1):
        dp[0][i] = prefix[0][i]
    for k in range(1, 6):
        for i in range(m + 1):
            best, arg = neg, 0
            for j in range(i + 1):
                value = dp[k - 1][j] + prefix[k][i] - prefix[k][j]
                if value > best:
                    best, arg = value, j
            dp[k][i], choice[k][i] = best, arg

    bounds = [0] * 6
    i = m
    for k in range(5, 0, -1):
        i = choice[k][i]
        bounds[k] = i

    thresholds: list[float] = []
    for k in range(1, 6):
        b = bounds[k]
        if b == 0:
            t = distinct[0] - 1.0
        elif b == m:
            t = distinct[-1] + 1.0
        else:
            t = (distinct[b - 1] + distinct[b]) / 2.0
        thresholds.append(t)
    for idx in range(1, 5):
        thresholds[idx] = max(thresholds[idx], thresholds[idx - 1])
    return tuple(round(t, 6) for t in thresholds)


def score_cefr(sentence: Sentence, lexicon: Lexicon) -> CefrLevel:
    """Level of one sentence under the frozen default thresholds."""
    return bin_score(
        feature_score(extract_features(sentence, lexicon)), DEFAULT_THRESHOLDS
    )


def attach_cefr(concepts: Iterable[str], level: CefrLevel) -> LabeledConceptSet:
    """Concept set with a level control; serializes as `<CEFR:X>` first."""
    return plain_controls(concepts, cefr=level)


def tag_dataset(
    pairs: Iterable[ConceptSentencePair],
    lexicon: Lexicon,
    strict: bool = True,
) -> list[tuple[ConceptSentencePair, CefrLevel]]:
    tagged = []
    for pair in pairs:
        try:
            level = score_cefr(pair.sentence, lexicon)
        except EmptySentence:
            if strict:
                raise
            logger.warning("skipping pair %s: no content tokens", pair.id)
            continue
        tagged.append((pair, level))
    return tagged


def read_calibration(path: str | Path) -> list[tuple[str, CefrLevel]]:
    """Read `sentence<TAB>level` lines."""
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise PairFormatError("expected sentence<TAB>level", line=line_no)
            sentence, level_name = parts
            try:
                level = CefrLevel[level_name.strip()]
            except KeyError as exc:
                raise PairFormatError(f"unknown level {level_name!r}", line=line_no) from exc
            rows.append((sentence, level))
    return rows


def default_calibration_path() -> Path:
    from importlib.resources import files

    return Path(str(files("conceptgen.data").joinpath(CALIBRATION_RESOURCE)))


def fit_default_scorer(lexicon: Lexicon | None = None) -> CefrScorer:
    """Recalibrate on the bundled file; used to freeze DEFAULT_THRESHOLDS."""
    rows = read_calibration(default_calibration_path())
    scorer = CefrScorer(lexicon=lexicon)
    scorer.fit([s for s, _ in rows], [lv for _, lv in rows])
    return scorer
