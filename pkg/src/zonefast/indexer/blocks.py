"""Per-block bitmask algebra shared by every kernel.

Each 64-byte block of input is described by 64-bit words in which bit ``i``
refers to byte ``i`` of the block. Kernels differ only in how they produce the
raw classification layers and how many blocks they resolve at once; the rules
here define the expected result bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

MASK64 = (1 << 64) - 1
BLOCK = 64


class IndexerCarry(NamedTuple):
    """State crossing a block boundary. Every field is 0 or 1."""

    in_quoted: int = 0
    in_comment: int = 0
    follows_contiguous: int = 0
    follows_backslash: int = 0


ZERO_CARRY = IndexerCarry()


@dataclass(slots=True)
class BlockMasks:
    newline: int = 0
    backslash: int = 0
    quote: int = 0
    semicolon: int = 0
    blank: int = 0
    special: int = 0
    in_quoted: int = 0
    in_comment: int = 0
    escaped: int = 0
    contiguous: int = 0
    fields: int = 0
    delimiters: int = 0


@dataclass
class IndexTape:
    """Field and delimiter offsets for one window, relative to ``base``."""

    base: int
    fields: np.ndarray
    delimiters: np.ndarray

    @classmethod
    def empty(cls, base: int = 0) -> "IndexTape":
        return cls(base, np.empty(0, dtype=np.uint32), np.empty(0, dtype=np.uint32))

    def absolute_fields(self) -> list[int]:
        return (self.fields.astype(np.int64) + self.base).tolist()

    def absolute_delimiters(self) -> list[int]:
        return (self.delimiters.astype(np.int64) + self.base).tolist()


def prefix_xor(bits: int) -> int:
    """Bit i of the result is the XOR of bits 0..i of the input."""
    bits ^= bits << 1
    bits ^= bits << 2
    bits ^= bits << 4
    bits ^= bits << 8
    bits ^= bits << 16
    bits ^= bits << 32
    return bits & MASK64


def compute_quoted_mask(quote_bits: int, carry: IndexerCarry) -> tuple[int, IndexerCarry]:
    """Branch-free quoted-region mask, covering each opening quote up to its closer."""
    mask = prefix_xor(quote_bits)
    if carry.in_quoted:
        mask ^= MASK64
    parity = quote_bits.bit_count() & 1
    return mask, carry._replace(in_quoted=carry.in_quoted ^ parity)


def _span(start: int, stop: int) -> int:
    return (1 << stop) - (1 << start)


_NORMAL, _QUOTED, _COMMENT = 0, 1, 2


def sweep(masks: BlockMasks, carry: IndexerCarry) -> IndexerCarry:
    """Ordered scalar walk over quote, semicolon, newline and backslash bits.

    Needed whenever a block has semicolons or backslashes, or enters inside a
    comment or right after an escaping backslash: semicolons inside quotes do
    not open comments, quotes inside comments do not open strings, and
    backslashes escape the next byte everywhere except in comments.
    """
    quote, semicolon, newline, backslash = masks.quote, masks.semicolon, masks.newline, masks.backslash
    events = quote | semicolon | newline | backslash
    escaped = 1 if carry.follows_backslash else 0
    if carry.in_quoted:
        state = _QUOTED
    elif carry.in_comment:
        state = _COMMENT
    else:
        state = _NORMAL
    start = 0
    in_quoted = in_comment = 0
    while events:
        bit = events & -events
        events ^= bit
        if escaped & bit:
            continue
        if state == _NORMAL:
            if quote & bit:
                state, start = _QUOTED, bit.bit_length() - 1
            elif semicolon & bit:
                state, start = _COMMENT, bit.bit_length() - 1
            elif backslash & bit:
                escaped |= bit << 1
        elif state == _QUOTED:
            if quote & bit:
                in_quoted |= _span(start, bit.bit_length() - 1)
                state = _NORMAL
            elif backslash & bit:
                escaped |= bit << 1
        elif newline & bit:
            in_comment |= _span(start, bit.bit_length() - 1)
            state = _NORMAL
    if state == _QUOTED:
        in_quoted |= _span(start, BLOCK)
    elif state == _COMMENT:
        in_comment |= _span(start, BLOCK)
    masks.in_quoted = in_quoted
    masks.in_comment = in_comment
    masks.escaped = escaped & MASK64
    return IndexerCarry(
        int(state == _QUOTED), int(state == _COMMENT), carry.follows_contiguous, escaped >> BLOCK
    )


def needs_sweep(masks: BlockMasks, carry: IndexerCarry) -> bool:
    return bool(masks.semicolon or masks.backslash or carry.in_comment or carry.follows_backslash)


def resolve_comments(masks: BlockMasks, carry: IndexerCarry) -> IndexerCarry:
    """Fill ``in_quoted``, ``in_comment`` and ``escaped``; return the outgoing carry."""
    if needs_sweep(masks, carry):
        return sweep(masks, carry)
    masks.in_quoted, carry = compute_quoted_mask(masks.quote, carry)
    masks.in_comment = 0
    masks.escaped = 0
    return carry


def derive_structure(masks: BlockMasks, carry: IndexerCarry) -> IndexerCarry:
    """Compute ``contiguous``, ``fields`` and ``delimiters`` from resolved layers."""
    outside = ~(masks.in_quoted | masks.in_comment) & MASK64
    escaped = masks.escaped
    contiguous = ((~(masks.blank | masks.special | masks.quote) & MASK64) | escaped) & outside
    follows = ((contiguous << 1) | carry.follows_contiguous) & MASK64
    live_quote = masks.quote & ~escaped & ~masks.in_comment
    structural = masks.special & ~escaped & outside
    masks.contiguous = contiguous
    masks.fields = (contiguous & ~follows) | (live_quote & masks.in_quoted) | structural
    masks.delimiters = (follows & ~contiguous) | (live_quote & ~masks.in_quoted)
    return carry._replace(follows_contiguous=contiguous >> 63)
