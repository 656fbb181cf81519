"""Training, decoding, and persistence for the concept-to-sentence model.

The sentence distribution factorizes autoregressively: the loss is per-token
negative log-likelihood of the target given the (control-annotated) concept
tokens, so control codes are realized purely in the input sequence and one
architecture serves both the base and the controlled model.
"""

from __future__ import annotations

import json
import logging
import struct
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Sequence

import torch
from sklearn.base import BaseEstimator
from torch.nn.functional import cross_entropy, log_softmax

from ..corpus import Sentence
from ..errors import EmptyDataset, ShapeMismatch, VocabularyMismatch
from .transformer import EncoderDecoder
from .vocabulary import BOS_ID, EOS_ID, PAD_ID, Vocabulary

logger = logging.getLogger(__name__)

CLIP_NORM = 1.0

CHECKPOINT_MAGIC = b"CGENCKPT"
CHECKPOINT_VERSION = 1


@dataclass(frozen=True)
class ModelConfig:
    layers: int = 2
    attention_heads: int = 4
    model_width: int = 128
    feed_forward_width: int = 256
    dropout_rate: float = 0.1
    max_positions: int = 128

    def __post_init__(self):
        for name in ("layers", "attention_heads", "model_width", "feed_forward_width", "max_positions"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not 0.0 <= self.dropout_rate < 1.0:
            raise ValueError("dropout_rate must be in [0, 1)")
        if self.model_width % self.attention_heads != 0:
            raise ValueError(
                f"model_width {self.model_width} not divisible by attention_heads {self.attention_heads}"
            )


@dataclass(frozen=True)
class TrainingConfig:
    epochs: int = 5
    batch_size: int = 32
    learning_rate: float = 5e-5
    seed: int = 13

    def __post_init__(self):
        if self.epochs <= 0 or self.batch_size <= 0:
            raise ValueError("epochs and batch_size must be positive")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")


@dataclass(frozen=True)
class DecoderConfig:
    strategy: str = "topk"
    k: int = 50
    max_length: int = 64
    length_penalty: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.strategy not in ("topk", "beam"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.max_length < 1:
            raise ValueError("max_length must be >= 1")


@dataclass(frozen=True)
class StepTrace:
    """One decode step: the top-k candidate set and the sampled choice."""

    candidates: tuple[int, ...]
    probabilities: tuple[float, ...]
    chosen: int


def sequence_score(log_likelihood: float, length: int, length_penalty: float) -> float:
    """Candidate score loglik / length**alpha for ranking backends.

    Top-k sampling draws a single sequence and ranks nothing, so the penalty
    is inert there; the knob exists for beam-style backends.
    """
    return log_likelihood / max(length, 1) ** length_penalty


def _target_tokens(target) -> list[str]:
    if isinstance(target, Sentence):
        return list(target.surfaces())
    if isinstance(target, str):
        return target.split()
    return list(target)


def _normalize_pairs(pairs) -> list[tuple[list[str], list[str]]]:
    return [(list(inp), _target_tokens(tgt)) for inp, tgt in pairs]


class ConceptToSequenceModel(BaseEstimator):
    """Encoder-decoder generator with the usual fit/predict surface.

    `fit(X, y)` takes input token sequences and target sentences; the
    vocabulary is built from the data unless one is passed in. After fitting,
    `generate_tokens` samples, `predict` decodes greedily, `log_likelihood`
    scores, and `save` writes a self-describing checkpoint.
    """

    def __init__(
        self,
        model_config: ModelConfig | None = None,
        training_config: TrainingConfig | None = None,
    ):
        self.model_config = model_config
        self.training_config = training_config

    def _model_config(self) -> ModelConfig:
        return self.model_config if self.model_config is not None else ModelConfig()

    def _training_config(self) -> TrainingConfig:
        return self.training_config if self.training_config is not None else TrainingConfig()

    def _require_fitted(self):
        if not hasattr(self, "module_"):
            raise RuntimeError("model is not fitted; call fit or load a checkpoint")

    def _build_module(self, vocab_size: int) -> EncoderDecoder:
        cfg = self._model_config()
        return EncoderDecoder(
            vocab_size=vocab_size,
            layers=cfg.layers,
            heads=cfg.attention_heads,
            width=cfg.model_width,
            ff_width=cfg.feed_forward_width,
            dropout=cfg.dropout_rate,
            max_positions=cfg.max_positions,
            pad_id=PAD_ID,
        )

    def _encode_pair(self, inp: Sequence[str], tgt: Sequence[str]) -> tuple[list[int], list[int]]:
        cfg = self._model_config()
        src = self.vocabulary_.encode(inp)
        out = [BOS_ID] + self.vocabulary_.encode(tgt) + [EOS_ID]
        if len(src) > cfg.max_positions or len(out) > cfg.max_positions:
            raise ShapeMismatch(
                f"sequence of length {max(len(src), len(out))} exceeds max_positions {cfg.max_positions}"
            )
        return src, out

    @staticmethod
    def _pad_batch(rows: list[list[int]]) -> torch.Tensor:
        width = max(len(r) for r in rows)
        batch = torch.full((len(rows), width), PAD_ID, dtype=torch.long)
        for i, row in enumerate(rows):
            batch[i, : len(row)] = torch.tensor(row, dtype=torch.long)
        return batch

    def _epoch_loss(self, encoded: list[tuple[list[int], list[int]]], batch_size: int) -> float:
        """Mean per-token validation loss; no gradient, dropout off."""
        self.module_.eval()
        total, tokens = 0.0, 0
        with torch.no_grad():
            for start in range(0, len(encoded), batch_size):
                chunk = encoded[start : start + batch_size]
                src = self._pad_batch([c[0] for c in chunk])
                tgt = self._pad_batch([c[1] for c in chunk])
                logits = self.module_(src, tgt[:, :-1])
                out = tgt[:, 1:]
                loss = cross_entropy(
                    logits.reshape(-1, logits.shape[-1]), out.reshape(-1),
                    ignore_index=PAD_ID, reduction="sum",
                )
                total += loss.item()
                tokens += int((out != PAD_ID).sum())
        return total / tokens

    def _run_epochs(
        self,
        pairs: list[tuple[list[str], list[str]]],
        epochs: int,
        learning_rate: float,
        seed: int,
        validation: list[tuple[list[str], list[str]]] | None,
    ) -> None:
        tcfg = self._training_config()
        encoded = [self._encode_pair(inp, tgt) for inp, tgt in pairs]
        encoded_val = (
            [self._encode_pair(inp, tgt) for inp, tgt in validation] if validation else None
        )
        optimizer = torch.optim.Adam(self.module_.parameters(), lr=learning_rate)
        order = torch.Generator().manual_seed(seed)
        for epoch in range(1, epochs + 1):
            self.module_.train()
            perm = torch.randperm(len(encoded), generator=order).tolist()
            total, tokens = 0.0, 0
            for start in range(0, len(perm), tcfg.batch_size):
                chunk = [encoded[i] for i in perm[start : start + tcfg.batch_size]]
                src = self._pad_batch([c[0] for c in chunk])
                tgt = self._pad_batch([c[1] for c in chunk])
                logits = self.module_(src, tgt[:, :-1])
                out = tgt[:, 1:]
                loss = cross_entropy(
                    logits.reshape(-1, logits.shape[-1]), out.reshape(-1),
                    ignore_index=PAD_ID,
                )
                optimizer.zero_grad()
                loss.backward()
                torch.nn.utils.clip_grad_norm_(self.module_.parameters(), CLIP_NORM)
                optimizer.step()
                n = int((out != PAD_ID).sum())
                total += loss.item() * n
                tokens += n
            entry = {"epoch": len(self.history_) + 1, "train_loss": total / tokens}
            if encoded_val:
                entry["val_loss"] = self._epoch_loss(encoded_val, tcfg.batch_size)
                logger.info(
                    "epoch %d train_loss %.4f val_loss %.4f",
                    entry["epoch"], entry["train_loss"], entry["val_loss"],
                )
            else:
                logger.info("epoch %d train_loss %.4f", entry["epoch"], entry["train_loss"])
            self.history_.append(entry)
        self.module_.eval()

    def fit(self, X, y=None, validation_data=None, vocabulary: Vocabulary | None = None):
        """Train from scratch. X is (input, target) pairs when y is omitted."""
        pairs = _normalize_pairs(zip(X, y) if y is not None else X)
        if not pairs:
            raise EmptyDataset("no training pairs")
        validation = _normalize_pairs(validation_data) if validation_data else None
        tcfg = self._training_config()
        if vocabulary is not None:
            self.vocabulary_ = vocabulary
        else:
            self.vocabulary_ = Vocabulary.build(
                [inp for inp, _ in pairs] + [tgt for _, tgt in pairs]
            )
        torch.manual_seed(tcfg.seed)
        self.module_ = self._build_module(len(self.vocabulary_))
        self.history_: list[dict] = []
        self._run_epochs(pairs, tcfg.epochs, tcfg.learning_rate, tcfg.seed, validation)
        return self

    def continue_pretrain(self, X, y=None, epochs: int = 3, validation_data=None):
        """Resume optimization from the current parameters."""
        self._require_fitted()
        pairs = _normalize_pairs(zip(X, y) if y is not None else X)
        if not pairs:
            return self
        unknown = sorted(
            {t for _, tgt in pairs for t in tgt if t not in self.vocabulary_}
        )
        if unknown:
            raise VocabularyMismatch(
                f"{len(unknown)} target tokens missing from vocabulary, e.g. {unknown[:5]}"
            )
        validation = _normalize_pairs(validation_data) if validation_data else None
        tcfg = self._training_config()
        torch.manual_seed(tcfg.seed + 1)
        self._run_epochs(pairs, epochs, tcfg.learning_rate, tcfg.seed + 1, validation)
        return self

    def next_distribution(
        self, input_tokens: Sequence[str], prefix_tokens: Sequence[str] = ()
    ) -> list[float]:
        """Full next-token distribution after the given target prefix."""
        self._require_fitted()
        self.module_.eval()
        src = torch.tensor([self.vocabulary_.encode(input_tokens)], dtype=torch.long)
        tgt = torch.tensor(
            [[BOS_ID] + self.vocabulary_.encode(prefix_tokens)], dtype=torch.long
        )
        with torch.no_grad():
            logits = self.module_(src, tgt)[0, -1]
            return torch.softmax(logits, dim=-1).tolist()

    def generate_tokens(
        self,
        input_tokens: Sequence[str],
        decoder_config: DecoderConfig | None = None,
        trace: list[StepTrace] | None = None,
    ) -> list[str]:
        """Sample one output; each call uses its own seeded random stream."""
        self._require_fitted()
        if not input_tokens:
            raise ValueError("input tokens required")
        dcfg = decoder_config if decoder_config is not None else DecoderConfig()
        if dcfg.strategy != "topk":
            raise NotImplementedError(f"{dcfg.strategy} decoding backend is reserved")
        self.module_.eval()
        sampler = torch.Generator().manual_seed(dcfg.seed)
        src = torch.tensor([self.vocabulary_.encode(input_tokens)], dtype=torch.long)
        steps = min(dcfg.max_length, self._model_config().max_positions - 1)
        with torch.no_grad():
            memory = self.module_.encode(src)
            ys = [BOS_ID]
            for _ in range(steps):
                tgt = torch.tensor([ys], dtype=torch.long)
                hidden = self.module_.decode(memory, src, tgt)
                logits = self.module_.project(hidden)[0, -1]
                logits[PAD_ID] = float("-inf")
                logits[BOS_ID] = float("-inf")
                k = min(dcfg.k, logits.shape[0] - 2)
                top_values, top_ids = torch.topk(logits, k)
                probs = torch.softmax(top_values, dim=-1)
                pick = int(torch.multinomial(probs, 1, generator=sampler))
                token_id = int(top_ids[pick])
                if trace is not None:
                    trace.append(
                        StepTrace(
                            candidates=tuple(top_ids.tolist()),
                            probabilities=tuple(probs.tolist()),
                            chosen=token_id,
                        )
                    )
                if token_id == EOS_ID:
                    break
                ys.append(token_id)
        return self.vocabulary_.decode(ys[1:])

    def predict(self, X: Iterable[Sequence[str]]) -> list[list[str]]:
        """Greedy decode (top-k with k = 1) for each input."""
        greedy = DecoderConfig(k=1, seed=0)
        return [self.generate_tokens(inp, greedy) for inp in X]

    def log_likelihood(self, input_tokens: Sequence[str], target) -> float:
        """Sum of log P(token | prefix, input) over the target plus EOS."""
        self._require_fitted()
        self.module_.eval()
        tokens = _target_tokens(target)
        src = torch.tensor([self.vocabulary_.encode(input_tokens)], dtype=torch.long)
        tgt = [BOS_ID] + self.vocabulary_.encode(tokens) + [EOS_ID]
        tgt_in = torch.tensor([tgt[:-1]], dtype=torch.long)
        tgt_out = torch.tensor(tgt[1:], dtype=torch.long)
        with torch.no_grad():
            logits = self.module_(src, tgt_in)[0]
            logprobs = log_softmax(logits, dim=-1)
            return float(logprobs[torch.arange(len(tgt_out)), tgt_out].sum())

    def save(self, path: str | Path) -> None:
        save_checkpoint(path, self)


def train(
    pairs,
    training_config: TrainingConfig | None = None,
    model_config: ModelConfig | None = None,
    validation_pairs=None,
    vocabulary: Vocabulary | None = None,
) -> ConceptToSequenceModel:
    """Fit a fresh model on (inputTokens, target) pairs."""
    model = ConceptToSequenceModel(model_config=model_config, training_config=training_config)
    return model.fit(pairs, validation_data=validation_pairs, vocabulary=vocabulary)


def train_controlled(
    pairs,
    training_config: TrainingConfig | None = None,
    model_config: ModelConfig | None = None,
    validation_pairs=None,
    vocabulary: Vocabulary | None = None,
) -> ConceptToSequenceModel:
    """Fit on control-annotated inputs.

    Controls live entirely in the input token sequence (level token first,
    `concept|ROLE` items), so this is the same optimization as `train`; the
    separate entry point marks intent and keeps call sites readable.
    """
    return train(pairs, training_config, model_config, validation_pairs, vocabulary)


def continue_pretrain(
    model: ConceptToSequenceModel, extra_pairs, epochs: int = 3, validation_pairs=None
) -> ConceptToSequenceModel:
    return model.continue_pretrain(extra_pairs, epochs=epochs, validation_data=validation_pairs)


def generate(
    model: ConceptToSequenceModel,
    input_tokens: Sequence[str],
    decoder_config: DecoderConfig | None = None,
    lexicon=None,
) -> Sentence:
    """Sample one sentence and tokenize it against the lexicon."""
    from ..corpus import sentence_from_text
    from ..lexicon import default_lexicon

    tokens = model.generate_tokens(input_tokens, decoder_config)
    lex = lexicon if lexicon is not None else default_lexicon()
    return sentence_from_text(" ".join(tokens), lex)


def log_likelihood(model: ConceptToSequenceModel, input_tokens: Sequence[str], sentence) -> float:
    return model.log_likelihood(input_tokens, sentence)


def save_checkpoint(path: str | Path, model: ConceptToSequenceModel) -> None:
    """Write a self-describing flat binary checkpoint.

    Layout: magic, 8-byte little-endian header length, JSON header (version,
    model config, vocabulary, tensor index in parameter order), then raw
    little-endian float32 tensor bytes. Byte-for-byte reproducible for
    identical parameters, which keeps rerun manifests stable.
    """
    model._require_fitted()
    names, tensors = [], []
    for name, parameter in model.module_.named_parameters():
        names.append(name)
        tensors.append(parameter.detach().to(torch.float32).contiguous())
    header = {
        "version": CHECKPOINT_VERSION,
        "model_config": asdict(model._model_config()),
        "vocabulary": list(model.vocabulary_.tokens),
        "tensors": [
            {"name": n, "shape": list(t.shape), "dtype": "float32"}
            for n, t in zip(names, tensors)
        ],
    }
    header_bytes = json.dumps(header, sort_keys=True, ensure_ascii=False).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(CHECKPOINT_MAGIC)
        fh.write(struct.pack("<Q", len(header_bytes)))
        fh.write(header_bytes)
        for tensor in tensors:
            fh.write(tensor.numpy().tobytes())


def load_checkpoint(path: str | Path) -> ConceptToSequenceModel:
    import numpy as np

    with open(path, "rb") as fh:
        magic = fh.read(len(CHECKPOINT_MAGIC))
        if magic != CHECKPOINT_MAGIC:
            raise ValueError(f"not a checkpoint file: {path}")
        (header_len,) = struct.unpack("<Q", fh.read(8))
        header = json.loads(fh.read(header_len).decode("utf-8"))
        if header["version"] != CHECKPOINT_VERSION:
            raise ValueError(f"unsupported checkpoint version {header['version']}")
        config = ModelConfig(**header["model_config"])
        model = ConceptToSequenceModel(model_config=config)
        model.vocabulary_ = Vocabulary(header["vocabulary"])
        torch.manual_seed(0)
        model.module_ = model._build_module(len(model.vocabulary_))
        model.history_ = []
        params = dict(model.module_.named_parameters())
        for entry in header["tensors"]:
            shape = tuple(entry["shape"])
            count = 1
            for dim in shape:
                count *= dim
            data = np.frombuffer(fh.read(count * 4), dtype="<f4").reshape(shape)
            with torch.no_grad():
                params[entry["name"]].copy_(torch.from_numpy(data.copy()))
        model.module_.eval()
    return model
