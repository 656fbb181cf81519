"""Trainable encoder-decoder generator with top-k sampled decoding."""

from .vocabulary import (
    BOS_ID,
    BOS_TOKEN,
    EOS_ID,
    EOS_TOKEN,
    PAD_ID,
    PAD_TOKEN,
    RESERVED_TOKENS,
    UNK_ID,
    UNK_TOKEN,
    Vocabulary,
)
from .model import (
    ConceptToSequenceModel,
    DecoderConfig,
    ModelConfig,
    TrainingConfig,
    continue_pretrain,
    generate,
    load_checkpoint,
    log_likelihood,
    save_checkpoint,
    sequence_score,
    train,
    train_controlled,
)

__all__ = [
    "BOS_ID",
    "BOS_TOKEN",
    "EOS_ID",
    "EOS_TOKEN",
    "PAD_ID",
    "PAD_TOKEN",
    "RESERVED_TOKENS",
    "UNK_ID",
    "UNK_TOKEN",
    "Vocabulary",
    "ConceptToSequenceModel",
    "DecoderConfig",
    "ModelConfig",
    "TrainingConfig",
    "continue_pretrain",
    "generate",
    "load_checkpoint",
    "log_likelihood",
    "save_checkpoint",
    "sequence_score",
    "train",
    "train_controlled",
]
