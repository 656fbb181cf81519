"""Control-code vocabulary: proficiency levels, semantic roles, labeled sets.

A :class:`LabeledConceptSet` is the model-facing form of a concept set. It
serializes to a flat token sequence: an optional level token such as
``<CEFR:B1>`` first, then one token per concept, either bare (``dog``) or
role-annotated (``dog|ARG0``). Parsing inverts serialization exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Iterable, Sequence

from .errors import ControlFormatError


class CefrLevel(IntEnum):
    """Six proficiency levels with their standard total order."""

    A1 = 1
    A2 = 2
    B1 = 3
    B2 = 4
    C1 = 5
    C2 = 6

    @property
    def token(self) -> str:
        return f"<CEFR:{self.name}>"

    @classmethod
    def from_token(cls, token: str) -> "CefrLevel":
        m = re.fullmatch(r"<CEFR:(A1|A2|B1|B2|C1|C2)>", token)
        if m is None:
            raise ValueError(f"not a CEFR control token: {token!r}")
        return cls[m.group(1)]


CEFR_TOKENS = tuple(level.token for level in CefrLevel)


class RoleLabel(Enum):
    V = "V"
    ARG0 = "ARG0"
    ARG1 = "ARG1"
    ARG2 = "ARG2"
    ARGM = "ARGM"
    OTHER = "OTHER"


# tie-breaking order when a concept holds several roles across frames
ROLE_PRECEDENCE = (
    RoleLabel.V,
    RoleLabel.ARG0,
    RoleLabel.ARG1,
    RoleLabel.ARG2,
    RoleLabel.ARGM,
    RoleLabel.OTHER,
)
_PRECEDENCE_RANK = {role: i for i, role in enumerate(ROLE_PRECEDENCE)}

_ROLE_DELIMITER = "|"
_CONCEPT_RE = re.compile(r"[^\s|<>]+")


def role_rank(role: RoleLabel) -> int:
    return _PRECEDENCE_RANK[role]


def _valid_concept(concept: str) -> bool:
    return (
        bool(concept)
        and concept == concept.lower()
        and _CONCEPT_RE.fullmatch(concept) is not None
    )


@dataclass(frozen=True)
class ControlItem:
    concept: str
    role: RoleLabel | None = None

    def __post_init__(self):
        if not _valid_concept(self.concept):
            raise ValueError(
                f"concept must be lowercase with no whitespace, '|', '<' or '>': {self.concept!r}"
            )


@dataclass(frozen=True)
class LabeledConceptSet:
    items: tuple[ControlItem, ...]
    cefr: CefrLevel | None = None

    def __post_init__(self):
        concepts = [item.concept for item in self.items]
        if len(set(concepts)) != len(concepts):
            raise ValueError("each concept may appear only once")

    def concepts(self) -> frozenset[str]:
        return frozenset(item.concept for item in self.items)

    def roles(self) -> dict[str, RoleLabel | None]:
        return {item.concept: item.role for item in self.items}


def plain_controls(concepts: Iterable[str], cefr: CefrLevel | None = None) -> LabeledConceptSet:
    """Unannotated concepts in canonical (lemma-sorted) order."""
    items = tuple(ControlItem(c) for c in sorted(set(concepts)))
    return LabeledConceptSet(items=items, cefr=cefr)


def serialize_controls(labeled: LabeledConceptSet) -> list[str]:
    """Render to the model's input token sequence."""
    tokens = []
    if labeled.cefr is not None:
        tokens.append(labeled.cefr.token)
    for item in labeled.items:
        if item.role is None:
            tokens.append(item.concept)
        else:
            tokens.append(f"{item.concept}{_ROLE_DELIMITER}{item.role.value}")
    return tokens


def parse_controls(tokens: Sequence[str] | str) -> LabeledConceptSet:
    """Invert :func:`serialize_controls`.

    Raises :class:`ControlFormatError` carrying the 0-based item position of
    the first malformed token.
    """
    if isinstance(tokens, str):
        tokens = tokens.split()
    cefr: CefrLevel | None = None
    items: list[ControlItem] = []
    seen: set[str] = set()
    for pos, token in enumerate(tokens):
        if token.startswith("<"):
            try:
                level = CefrLevel.from_token(token)
            except ValueError as exc:
                raise ControlFormatError(str(exc), position=pos) from exc
            if pos != 0:
                raise ControlFormatError("CEFR token only allowed in first position", position=pos)
            cefr = level
            continue
        concept, sep, role_text = token.partition(_ROLE_DELIMITER)
        if not _valid_concept(concept):
            raise ControlFormatError(f"invalid concept {concept!r}", position=pos)
        role: RoleLabel | None = None
        if sep:
            try:
                role = RoleLabel(role_text)
            except ValueError as exc:
                raise ControlFormatError(f"unknown role {role_text!r}", position=pos) from exc
        if concept in seen:
            raise ControlFormatError(f"duplicate concept {concept!r}", position=pos)
        seen.add(concept)
        items.append(ControlItem(concept=concept, role=role))
    return LabeledConceptSet(items=tuple(items), cefr=cefr)
