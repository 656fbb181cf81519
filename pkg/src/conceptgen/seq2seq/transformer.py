"""Small encoder-decoder transformer, written out in full.

Pre-norm residual blocks, sinusoidal positions, shared source/target
embedding (one vocabulary serves both sides). Masks are boolean with True
meaning "may attend". Everything lives in named_parameters so checkpoints
capture the complete learnable state.
"""

from __future__ import annotations

import math

import torch
from torch import Tensor, nn


def sinusoidal_positions(max_positions: int, width: int) -> Tensor:
    """Fixed position table [max_positions, width]."""
    position = torch.arange(max_positions, dtype=torch.float32).unsqueeze(1)
    step = torch.arange(0, width, 2, dtype=torch.float32)
    angle = position / torch.pow(10000.0, step / width)
    table = torch.zeros(max_positions, width)
    table[:, 0::2] = torch.sin(angle)
    table[:, 1::2] = torch.cos(angle[:, : width // 2])
    return table


def causal_mask(size: int, device=None) -> Tensor:
    """[size, size] lower-triangular True mask."""
    return torch.tril(torch.ones(size, size, dtype=torch.bool, device=device))


class MultiHeadAttention(nn.Module):
    def __init__(self, width: int, heads: int, dropout: float):
        super().__init__()
        if width % heads != 0:
            raise ValueError(f"width {width} not divisible by heads {heads}")
        self.heads = heads
        self.head_width = width // heads
        self.query = nn.Linear(width, width)
        self.key = nn.Linear(width, width)
        self.value = nn.Linear(width, width)
        self.out = nn.Linear(width, width)
        self.dropout = nn.Dropout(dropout)

    def _split(self, x: Tensor) -> Tensor:
        batch, length, _ = x.shape
        return x.view(batch, length, self.heads, self.head_width).transpose(1, 2)

    def forward(self, query: Tensor, key: Tensor, value: Tensor, mask: Tensor | None) -> Tensor:
        q = self._split(self.query(query))
        k = self._split(self.key(key))
        v = self._split(self.value(value))
        scores = q @ k.transpose(-2, -1) / math.sqrt(self.head_width)
        if mask is not None:
            scores = scores.masked_fill(~mask, torch.finfo(scores.dtype).min)
        weights = self.dropout(torch.softmax(scores, dim=-1))
        mixed = weights @ v
        batch, _, length, _ = mixed.shape
        return self.out(mixed.transpose(1, 2).reshape(batch, length, -1))


class FeedForward(nn.Module):
    def __init__(self, width: int, hidden: int, dropout: float):
        super().__init__()
        self.grow = nn.Linear(width, hidden)
        self.shrink = nn.Linear(hidden, width)
        self.dropout = nn.Dropout(dropout)

    def forward(self, x: Tensor) -> Tensor:
        return self.shrink(self.dropout(torch.relu(self.grow(x))))


class EncoderLayer(nn.Module):
    def __init__(self, width: int, heads: int, ff_width: int, dropout: float):
        super().__init__()
        self.attention = MultiHeadAttention(width, heads, dropout)
        self.feed_forward = FeedForward(width, ff_width, dropout)
        self.norm_attention = nn.LayerNorm(width)
        self.norm_ff = nn.LayerNorm(width)
        self.dropout = nn.Dropout(dropout)

    def forward(self, x: Tensor, pad_mask: Tensor) -> Tensor:
        normed = self.norm_attention(x)
        x = x + self.dropout(self.attention(normed, normed, normed, pad_mask))
        x = x + self.dropout(self.feed_forward(self.norm_ff(x)))
        return x


class DecoderLayer(nn.Module):
    def __init__(self, width: int, heads: int, ff_width: int, dropout: float):
        super().__init__()
        self.self_attention = MultiHeadAttention(width, heads, dropout)
        self.cross_attention = MultiHeadAttention(width, heads, dropout)
        self.feed_forward = FeedForward(width, ff_width, dropout)
        self.norm_self = nn.LayerNorm(width)
        self.norm_cross = nn.LayerNorm(width)
        self.norm_ff = nn.LayerNorm(width)
        self.dropout = nn.Dropout(dropout)

    def forward(
        self, x: Tensor, memory: Tensor, self_mask: Tensor, memory_mask: Tensor
    ) -> Tensor:
        normed = self.norm_self(x)
        x = x + self.dropout(self.self_attention(normed, normed, normed, self_mask))
        normed = self.norm_cross(x)
        x = x + self.dropout(self.cross_attention(normed, memory, memory, memory_mask))
        x = x + self.dropout(self.feed_forward(self.norm_ff(x)))
        return x


class EncoderDecoder(nn.Module):
    """forward(src_ids, tgt_in_ids) -> logits [batch, tgt_len, vocab]."""

    def __init__(
        self,
        vocab_size: int,
        layers: int,
        heads: int,
        width: int,
        ff_width: int,
        dropout: float,
        max_positions: int,
        pad_id: int,
    ):
        super().__init__()
        self.pad_id = pad_id
        self.max_positions = max_positions
        self.scale = math.sqrt(width)
        self.embedding = nn.Embedding(vocab_size, width, padding_idx=pad_id)
        self.register_buffer("positions", sinusoidal_positions(max_positions, width))
        self.input_dropout = nn.Dropout(dropout)
        self.encoder_layers = nn.ModuleList(
            EncoderLayer(width, heads, ff_width, dropout) for _ in range(layers)
        )
        self.decoder_layers = nn.ModuleList(
            DecoderLayer(width, heads, ff_width, dropout) for _ in range(layers)
        )
        self.norm_encoder = nn.LayerNorm(width)
        self.norm_decoder = nn.LayerNorm(width)
        self.project = nn.Linear(width, vocab_size)

    def _embed(self, ids: Tensor) -> Tensor:
        length = ids.shape[1]
        if length > self.max_positions:
            raise ValueError(f"sequence length {length} exceeds max positions {self.max_positions}")
        x = self.embedding(ids) * self.scale + self.positions[:length]
        return self.input_dropout(x)

    def pad_mask(self, ids: Tensor) -> Tensor:
        """[batch, 1, 1, len] True where attendable."""
        return (ids != self.pad_id)[:, None, None, :]

    def encode(self, src_ids: Tensor) -> Tensor:
        mask = self.pad_mask(src_ids)
        x = self._embed(src_ids)
        for layer in self.encoder_layers:
            x = layer(x, mask)
        return self.norm_encoder(x)

    def decode(self, memory: Tensor, src_ids: Tensor, tgt_in_ids: Tensor) -> Tensor:
        tgt_len = tgt_in_ids.shape[1]
        self_mask = (
            self.pad_mask(tgt_in_ids)
            & causal_mask(tgt_len, device=tgt_in_ids.device)[None, None]
        )
        memory_mask = self.pad_mask(src_ids)
        x = self._embed(tgt_in_ids)
        for layer in self.decoder_layers:
            x = layer(x, memory, self_mask, memory_mask)
        return self.norm_decoder(x)

    def forward(self, src_ids: Tensor, tgt_in_ids: Tensor) -> Tensor:
        memory = self.encode(src_ids)
        return self.project(self.decode(memory, src_ids, tgt_in_ids))
