"""Byte-at-a-time kernel. The reference every vector kernel must match."""

from __future__ import annotations

import numpy as np

from .blocks import (
    BLOCK,
    MASK64,
    BlockMasks,
    IndexerCarry,
    IndexTape,
    derive_structure,
    resolve_comments,
)
from .tables import BLANK_TABLE, SPECIAL_TABLE

_NEWLINE, _BACKSLASH, _QUOTE, _SEMICOLON = 1, 2, 4, 8
_EQ_FLAGS = bytearray(256)
_EQ_FLAGS[0x0A] = _NEWLINE
_EQ_FLAGS[0x5C] = _BACKSLASH
_EQ_FLAGS[0x22] = _QUOTE
_EQ_FLAGS[0x3B] = _SEMICOLON


def find_any_8x64(block: bytes, table: bytes) -> int:
    mask = 0
    for i, byte in enumerate(block[:BLOCK]):
        if table[byte & 0x0F] == byte:
            mask |= 1 << i
    return mask


def classify_block(block: bytes) -> BlockMasks:
    """Raw layers only: newline, backslash, quote, semicolon, blank, special."""
    newline = backslash = quote = semicolon = 0
    for i, byte in enumerate(block[:BLOCK]):
        flag = _EQ_FLAGS[byte]
        if flag:
            if flag == _NEWLINE:
                newline |= 1 << i
            elif flag == _BACKSLASH:
                backslash |= 1 << i
            elif flag == _QUOTE:
                quote |= 1 << i
            else:
                semicolon |= 1 << i
    return BlockMasks(
        newline=newline,
        backslash=backslash,
        quote=quote,
        semicolon=semicolon,
        blank=find_any_8x64(block, BLANK_TABLE),
        special=find_any_8x64(block, SPECIAL_TABLE),
    )


def valid_bits(length: int, block_index: int) -> int:
    remaining = length - block_index * BLOCK
    if remaining >= BLOCK:
        return MASK64
    if remaining <= 0:
        return 0
    return (1 << remaining) - 1


def block_count(length: int, final: bool) -> int:
    if length == 0:
        return 0
    # a final window also covers the byte just past the data so a trailing
    # item still receives its delimiter
    return (length + final + BLOCK - 1) // BLOCK


def _bit_positions(word: int, base: int) -> list[int]:
    out = []
    while word:
        low = word & -word
        out.append(base + low.bit_length() - 1)
        word ^= low
    return out


class ScalarKernel:
    name = "scalar"

    def process_block(self, block: bytes, carry: IndexerCarry, valid: int = MASK64) -> tuple[BlockMasks, IndexerCarry]:
        masks = classify_block(block)
        carry = resolve_comments(masks, carry)
        masks.escaped &= valid
        carry = derive_structure(masks, carry)
        return masks, carry

    def index_blocks(self, data: bytes, length: int, carry: IndexerCarry, final: bool = True) -> tuple[list[BlockMasks], IndexerCarry]:
        out = []
        for k in range(block_count(length, final)):
            masks, carry = self.process_block(
                bytes(data[k * BLOCK : (k + 1) * BLOCK]), carry, valid_bits(length, k)
            )
            out.append(masks)
        return out, carry

    def index_window(self, data: bytes, length: int, carry: IndexerCarry, final: bool = True, base: int = 0) -> tuple[IndexTape, IndexerCarry]:
        """Index ``data[:length]``; ``data`` must be zero padded by at least 64 bytes."""
        if length == 0:
            return IndexTape.empty(base), carry
        fields: list[int] = []
        delimiters: list[int] = []
        blocks, carry = self.index_blocks(data, length, carry, final)
        for k, masks in enumerate(blocks):
            fields += _bit_positions(masks.fields, k * BLOCK)
            delimiters += _bit_positions(masks.delimiters, k * BLOCK)
        while fields and fields[-1] >= length:
            fields.pop()
        while delimiters and delimiters[-1] > length:
            delimiters.pop()
        return (
            IndexTape(base, np.array(fields, dtype=np.uint32), np.array(delimiters, dtype=np.uint32)),
            carry,
        )
