"""Word-level vocabulary with reserved control ids.

No subword merging: control tokens like ``<CEFR:B2>`` and role-annotated
concepts like ``dog|ARG0`` are single vocabulary entries, so they can never
be split or synthesized from pieces.
"""

from __future__ import annotations

import json
from collections import Counter
from pathlib import Path
from typing import Iterable, Sequence

from ..controls import CEFR_TOKENS

PAD_TOKEN = "<pad>"
BOS_TOKEN = "<bos>"
EOS_TOKEN = "<eos>"
UNK_TOKEN = "<unk>"

RESERVED_TOKENS = (PAD_TOKEN, BOS_TOKEN, EOS_TOKEN, UNK_TOKEN) + CEFR_TOKENS

PAD_ID = 0
BOS_ID = 1
EOS_ID = 2
UNK_ID = 3


class Vocabulary:
    """Bijection between token strings and contiguous ids, PAD at 0."""

    def __init__(self, tokens: Sequence[str]):
        tokens = tuple(tokens)
        if tokens[: len(RESERVED_TOKENS)] != RESERVED_TOKENS:
            raise ValueError("vocabulary must start with the reserved tokens")
        if len(set(tokens)) != len(tokens):
            duplicates = [t for t, n in Counter(tokens).items() if n > 1]
            raise ValueError(f"duplicate tokens: {duplicates[:5]}")
        self._tokens = tokens
        self._index = {token: i for i, token in enumerate(tokens)}

    @classmethod
    def build(
        cls, sequences: Iterable[Sequence[str]], min_count: int = 1
    ) -> "Vocabulary":
        """Collect tokens from sequences, most frequent first, ties by token."""
        counts: Counter[str] = Counter()
        for seq in sequences:
            counts.update(seq)
        ordered = sorted(
            (t for t, n in counts.items() if n >= min_count and t not in RESERVED_TOKENS),
            key=lambda t: (-counts[t], t),
        )
        return cls(RESERVED_TOKENS + tuple(ordered))

    def __len__(self) -> int:
        return len(self._tokens)

    def __contains__(self, token: str) -> bool:
        return token in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, Vocabulary) and self._tokens == other._tokens

    def id_of(self, token: str) -> int:
        return self._index.get(token, UNK_ID)

    def token_of(self, token_id: int) -> str:
        return self._tokens[token_id]

    @property
    def tokens(self) -> tuple[str, ...]:
        return self._tokens

    def encode(self, tokens: Iterable[str]) -> list[int]:
        return [self._index.get(t, UNK_ID) for t in tokens]

    def decode(self, ids: Iterable[int], skip_special: bool = True) -> list[str]:
        """Ids back to tokens; PAD/BOS/EOS dropped unless skip_special=False."""
        structural = (PAD_ID, BOS_ID, EOS_ID)
        out = []
        for i in ids:
            if skip_special and i in structural:
                continue
            out.append(self._tokens[i])
        return out

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(list(self._tokens), fh, ensure_ascii=False)

    @classmethod
    def load(cls, path: str | Path) -> "Vocabulary":
        with open(path, "r", encoding="utf-8") as fh:
            return cls(json.load(fh))
