"""Append-only persistence for curation items, reviews, and statuses.

The store is a single-writer JSONL event log. Every mutation is appended,
flushed, and fsynced before the in-memory view changes, so an acknowledged
write survives a crash. Loading replays the log; a partial trailing line
(interrupted append) is ignored. compact() rewrites the log as one snapshot
event per item and swaps it in atomically.
"""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping

from ..controls import CefrLevel, RoleLabel
from ..corpus import (
    ConceptSentencePair,
    extract_concepts,
    pair_id,
    sentence_from_text,
    write_pairs,
)
from ..errors import PairFormatError, StatusTransitionError
from ..lexicon import Lexicon

SCORE_FIELDS = ("grammaticality", "complexity", "plausibility")


class ItemStatus(str, Enum):
    PENDING = "PENDING"
    ACCEPTED = "ACCEPTED"
    REJECTED = "REJECTED"


@dataclass(frozen=True)
class ReviewRecord:
    """One reviewer's three 4-point scores for a candidate."""

    reviewer_id: str
    grammaticality: int
    complexity: int
    plausibility: int
    candidate_index: int = 0
    note: str | None = None
    timestamp: float = field(default_factory=time.time)

    def __post_init__(self):
        if not self.reviewer_id:
            raise ValueError("reviewer_id must be nonempty")
        for name in SCORE_FIELDS:
            value = getattr(self, name)
            if not isinstance(value, int) or not 1 <= value <= 4:
                raise ValueError(f"{name} must be an integer in [1, 4]")
        if self.candidate_index < 0:
            raise ValueError("candidate_index must be nonnegative")

    def overall(self) -> float:
        return sum(getattr(self, name) for name in SCORE_FIELDS) / 3.0

    def to_dict(self) -> dict:
        payload = {
            "reviewerId": self.reviewer_id,
            "grammaticality": self.grammaticality,
            "complexity": self.complexity,
            "plausibility": self.plausibility,
            "candidateIndex": self.candidate_index,
            "timestamp": self.timestamp,
        }
        if self.note is not None:
            payload["note"] = self.note
        return payload

    @classmethod
    def from_dict(cls, raw: Mapping) -> "ReviewRecord":
        return cls(
            reviewer_id=raw["reviewerId"],
            grammaticality=raw["grammaticality"],
            complexity=raw["complexity"],
            plausibility=raw["plausibility"],
            candidate_index=raw.get("candidateIndex", 0),
            note=raw.get("note"),
            timestamp=raw["timestamp"],
        )


@dataclass(frozen=True)
class Candidate:
    """A generated sentence with its metric snapshot."""

    text: str
    metrics: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if not self.text.strip():
            raise ValueError("candidate text must be nonempty")

    def to_dict(self) -> dict:
        return {"text": self.text, "metrics": dict(self.metrics)}

    @classmethod
    def from_dict(cls, raw: Mapping) -> "Candidate":
        return cls(text=raw["text"], metrics=dict(raw.get("metrics", {})))


@dataclass(frozen=True)
class ItemRecord:
    """A curated learning item: request, candidates, reviews, status."""

    item_id: str
    concepts: tuple[str, ...]
    candidates: tuple[Candidate, ...]
    cefr: CefrLevel | None = None
    roles: Mapping[str, RoleLabel] | None = None
    status: ItemStatus = ItemStatus.PENDING
    reviews: tuple[ReviewRecord, ...] = ()

    def __post_init__(self):
        if not self.candidates:
            raise ValueError("an item must hold at least one candidate")

    def mean_scores(self) -> dict[str, float] | None:
        """Arithmetic mean per criterion over all reviews, None if unreviewed."""
        if not self.reviews:
            return None
        return {
            name: sum(getattr(r, name) for r in self.reviews) / len(self.reviews)
            for name in SCORE_FIELDS
        }

    def winning_candidate(self) -> Candidate:
        """The candidate with the highest mean overall review score.

        Ties go to the lowest index; an unreviewed item yields its first
        candidate.
        """
        if not self.reviews:
            return self.candidates[0]
        totals: dict[int, list[float]] = {}
        for review in self.reviews:
            if review.candidate_index < len(self.candidates):
                totals.setdefault(review.candidate_index, []).append(review.overall())
        if not totals:
            return self.candidates[0]
        best = min(totals, key=lambda i: (-sum(totals[i]) / len(totals[i]), i))
        return self.candidates[best]

    def to_dict(self) -> dict:
        request: dict = {"concepts": list(self.concepts)}
        if self.cefr is not None:
            request["cefr"] = self.cefr.name
        if self.roles is not None:
            request["roles"] = {c: r.value for c, r in sorted(self.roles.items())}
        return {
            "itemId": self.item_id,
            "request": request,
            "candidates": [c.to_dict() for c in self.candidates],
            "status": self.status.value,
            "reviews": [r.to_dict() for r in self.reviews],
            "meanScores": self.mean_scores(),
        }


def _item_from_event(raw: Mapping) -> ItemRecord:
    request = raw["request"]
    cefr = request.get("cefr")
    roles = request.get("roles")
    return ItemRecord(
        item_id=raw["itemId"],
        concepts=tuple(request["concepts"]),
        candidates=tuple(Candidate.from_dict(c) for c in raw["candidates"]),
        cefr=CefrLevel[cefr] if cefr is not None else None,
        roles={c: RoleLabel(r) for c, r in roles.items()} if roles is not None else None,
        status=ItemStatus(raw.get("status", "PENDING")),
        reviews=tuple(ReviewRecord.from_dict(r) for r in raw.get("reviews", [])),
    )


class ItemStore:
    """Single-writer item log with crash-safe appends and atomic compaction."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._items: dict[str, ItemRecord] = {}
        self._next_id = 1
        if self.path.exists():
            self._replay()
        self._fh = open(self.path, "a", encoding="utf-8")

    def _replay(self) -> None:
        with open(self.path, "r", encoding="utf-8") as fh:
            lines = fh.read().split("\n")
        # Anything after the final newline is an interrupted append; drop it.
        if lines and lines[-1] != "" and not _parses(lines[-1]):
            lines = lines[:-1]
        for line_no, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            try:
                event = json.loads(line)
            except json.JSONDecodeError as exc:
                raise PairFormatError(f"bad event: {exc}", line_no) from exc
            self._apply(event, line_no)

    def _apply(self, event: Mapping, line_no: int) -> None:
        kind = event.get("event")
        if kind == "item":
            record = _item_from_event(event)
            self._items[record.item_id] = record
            suffix = record.item_id.rsplit("-", 1)[-1]
            if suffix.isdigit():
                self._next_id = max(self._next_id, int(suffix) + 1)
        elif kind == "review":
            record = self._items[event["itemId"]]
            review = ReviewRecord.from_dict(event["review"])
            self._items[record.item_id] = ItemRecord(
                item_id=record.item_id,
                concepts=record.concepts,
                candidates=record.candidates,
                cefr=record.cefr,
                roles=record.roles,
                status=record.status,
                reviews=record.reviews + (review,),
            )
        elif kind == "status":
            record = self._items[event["itemId"]]
            self._items[record.item_id] = ItemRecord(
                item_id=record.item_id,
                concepts=record.concepts,
                candidates=record.candidates,
                cefr=record.cefr,
                roles=record.roles,
                status=ItemStatus(event["status"]),
                reviews=record.reviews,
            )
        else:
            raise PairFormatError(f"unknown event kind {kind!r}", line_no)

    def _append(self, event: dict) -> None:
        # Write-ahead: the event must be durable before memory changes.
        self._fh.write(json.dumps(event, sort_keys=True, ensure_ascii=False) + "\n")
        self._fh.flush()
        os.fsync(self._fh.fileno())

    def add_item(
        self,
        concepts: Iterable[str],
        candidates: Iterable[Candidate],
        cefr: CefrLevel | None = None,
        roles: Mapping[str, RoleLabel] | None = None,
    ) -> ItemRecord:
        with self._lock:
            record = ItemRecord(
                item_id=f"item-{self._next_id:06d}",
                concepts=tuple(concepts),
                candidates=tuple(candidates),
                cefr=cefr,
                roles=dict(roles) if roles is not None else None,
            )
            event = {"event": "item", **record.to_dict()}
            del event["meanScores"]
            self._append(event)
            self._items[record.item_id] = record
            self._next_id += 1
            return record

    def add_review(self, item_id: str, review: ReviewRecord) -> ItemRecord:
        with self._lock:
            record = self._items[item_id]
            if review.candidate_index >= len(record.candidates):
                raise ValueError(
                    f"candidate index {review.candidate_index} out of range"
                )
            self._append(
                {"event": "review", "itemId": item_id, "review": review.to_dict()}
            )
            updated = ItemRecord(
                item_id=record.item_id,
                concepts=record.concepts,
                candidates=record.candidates,
                cefr=record.cefr,
                roles=record.roles,
                status=record.status,
                reviews=record.reviews + (review,),
            )
            self._items[item_id] = updated
            return updated

    def set_status(self, item_id: str, status: ItemStatus) -> ItemRecord:
        with self._lock:
            record = self._items[item_id]
            if record.status is not ItemStatus.PENDING or status is ItemStatus.PENDING:
                raise StatusTransitionError(
                    f"cannot move {item_id} from {record.status.value} to {status.value}"
                )
            self._append(
                {"event": "status", "itemId": item_id, "status": status.value}
            )
            updated = ItemRecord(
                item_id=record.item_id,
                concepts=record.concepts,
                candidates=record.candidates,
                cefr=record.cefr,
                roles=record.roles,
                status=status,
                reviews=record.reviews,
            )
            self._items[item_id] = updated
            return updated

    def get(self, item_id: str) -> ItemRecord:
        return self._items[item_id]

    def items(self, status: ItemStatus | None = None) -> list[ItemRecord]:
        records = sorted(self._items.values(), key=lambda r: r.item_id)
        if status is None:
            return records
        return [r for r in records if r.status is status]

    def compact(self) -> None:
        """Rewrite the log as one snapshot event per item, atomically."""
        with self._lock:
            tmp = self.path.with_suffix(".compact")
            with open(tmp, "w", encoding="utf-8") as fh:
                for record in sorted(self._items.values(), key=lambda r: r.item_id):
                    event = {"event": "item", **record.to_dict()}
                    del event["meanScores"]
                    fh.write(
                        json.dumps(event, sort_keys=True, ensure_ascii=False) + "\n"
                    )
                fh.flush()
                os.fsync(fh.fileno())
            self._fh.close()
            os.replace(tmp, self.path)
            self._fh = open(self.path, "a", encoding="utf-8")

    def close(self) -> None:
        self._fh.close()


def _parses(line: str) -> bool:
    try:
        json.loads(line)
        return True
    except json.JSONDecodeError:
        return False


def export_accepted(store: ItemStore, path: str | Path, lexicon: Lexicon) -> int:
    """Write every accepted item's winning candidate as corpus pairs.

    Pair concepts are the requested concepts actually realized in the
    candidate; when the candidate realizes none of them, concepts are
    extracted from the sentence instead. Returns the number of pairs written.
    """
    pairs = []
    for record in store.items(ItemStatus.ACCEPTED):
        sentence = sentence_from_text(record.winning_candidate().text, lexicon)
        realized = frozenset(record.concepts) & set(sentence.lemmas())
        concepts = realized or extract_concepts(sentence, lexicon)
        if not concepts:
            continue
        pairs.append(
            ConceptSentencePair(
                id=pair_id(sentence.raw),
                concepts=concepts,
                sentence=sentence,
                source="curation",
            )
        )
    write_pairs(pairs, path)
    return len(pairs)
