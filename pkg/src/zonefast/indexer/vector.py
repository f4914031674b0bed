"""numpy kernels emulating 128-bit and 256-bit vector registers.

A 64-byte block is held as ``64 // width`` registers. Classification follows
the byte-shuffle recipe: the low nibble of each byte selects an entry from a
16-byte table duplicated in every 16-byte lane, bytes with the high bit set
look up zero, and an equality compare against the input plus a movemask gives
the 64-bit word. All blocks of a window are classified in one pass; quote
resolution is vectorized across runs of blocks free of semicolons and
backslashes, falling back to the shared scalar sweep elsewhere.
"""

from __future__ import annotations

import numpy as np

from .blocks import BLOCK, MASK64, BlockMasks, IndexerCarry, IndexTape, sweep
from .scalar import block_count, valid_bits
from .tables import BLANK_TABLE, SPECIAL_TABLE

_U64 = np.uint64
_ALL = _U64(MASK64)
_SHIFTS = tuple(_U64(s) for s in (1, 2, 4, 8, 16, 32))


def movemask(eq: np.ndarray) -> np.ndarray:
    """Collapse a ``(..., 64)`` boolean array into one uint64 per block."""
    rows = eq.reshape(-1, BLOCK)
    return np.packbits(rows, axis=1, bitorder="little").view("<u8").ravel()


def prefix_xor(words: np.ndarray) -> np.ndarray:
    out = words.copy()
    for shift in _SHIFTS:
        out ^= out << shift
    return out


class VectorKernel:
    def __init__(self, name: str, width: int):
        if width % 16 or BLOCK % width:
            raise ValueError("register width must be 16 or 32 bytes")
        self.name = name
        self.width = width
        lanes = width // 16
        self._lane_base = np.repeat(np.arange(lanes, dtype=np.uint8) * 16, 16)
        self._blank = np.tile(np.frombuffer(BLANK_TABLE, dtype=np.uint8), lanes)
        self._special = np.tile(np.frombuffer(SPECIAL_TABLE, dtype=np.uint8), lanes)

    def _registers(self, blocks: np.ndarray) -> np.ndarray:
        return blocks.reshape(blocks.shape[0], BLOCK // self.width, self.width)

    def _shuffle(self, table: np.ndarray, regs: np.ndarray) -> np.ndarray:
        looked = table[(regs & 0x0F) + self._lane_base]
        return np.where(regs & 0x80, np.uint8(0), looked)

    def find_any_8x64(self, blocks: np.ndarray, table: bytes) -> np.ndarray:
        lut = np.tile(np.frombuffer(table, dtype=np.uint8), self.width // 16)
        regs = self._registers(blocks)
        return movemask(self._shuffle(lut, regs) == regs)

    def classify_blocks(self, blocks: np.ndarray) -> dict[str, np.ndarray]:
        regs = self._registers(blocks)
        return {
            "newline": movemask(regs == 0x0A),
            "backslash": movemask(regs == 0x5C),
            "quote": movemask(regs == 0x22),
            "semicolon": movemask(regs == 0x3B),
            "blank": movemask(self._shuffle(self._blank, regs) == regs),
            "special": movemask(self._shuffle(self._special, regs) == regs),
        }

    def _resolve(self, layers: dict[str, np.ndarray], carry: IndexerCarry, length: int) -> IndexerCarry:
        quote, semicolon = layers["quote"], layers["semicolon"]
        newline, backslash = layers["newline"], layers["backslash"]
        nb = quote.shape[0]
        in_quoted = np.zeros(nb, dtype=_U64)
        in_comment = np.zeros(nb, dtype=_U64)
        escaped = np.zeros(nb, dtype=_U64)
        dirty = (semicolon | backslash) != 0
        dirty_at = np.flatnonzero(dirty)
        k = 0
        while k < nb:
            if dirty[k] or carry.in_comment or carry.follows_backslash:
                masks = BlockMasks(
                    newline=int(newline[k]),
                    backslash=int(backslash[k]),
                    quote=int(quote[k]),
                    semicolon=int(semicolon[k]),
                )
                carry = sweep(masks, carry)
                in_quoted[k] = masks.in_quoted
                in_comment[k] = masks.in_comment
                escaped[k] = masks.escaped & valid_bits(length, k)
                k += 1
                continue
            nxt = np.searchsorted(dirty_at, k)
            stop = int(dirty_at[nxt]) if nxt < dirty_at.shape[0] else nb
            seg = quote[k:stop]
            parity = (np.bitwise_count(seg) & 1).astype(np.uint8)
            running = np.bitwise_xor.accumulate(parity) ^ np.uint8(carry.in_quoted)
            entering = np.empty_like(running)
            entering[0] = carry.in_quoted
            entering[1:] = running[:-1]
            in_quoted[k:stop] = prefix_xor(seg) ^ (entering.astype(_U64) * _ALL)
            carry = carry._replace(in_quoted=int(running[-1]))
            k = stop
        layers["in_quoted"] = in_quoted
        layers["in_comment"] = in_comment
        layers["escaped"] = escaped
        return carry

    def _derive(self, layers: dict[str, np.ndarray], carry: IndexerCarry) -> IndexerCarry:
        quote, escaped = layers["quote"], layers["escaped"]
        in_quoted, in_comment = layers["in_quoted"], layers["in_comment"]
        outside = ~(in_quoted | in_comment)
        contiguous = (~(layers["blank"] | layers["special"] | quote) | escaped) & outside
        entering = np.empty_like(contiguous)
        entering[0] = carry.follows_contiguous
        entering[1:] = contiguous[:-1] >> _U64(63)
        follows = (contiguous << _U64(1)) | entering
        live_quote = quote & ~escaped & ~in_comment
        structural = layers["special"] & ~escaped & outside
        layers["contiguous"] = contiguous
        layers["fields"] = (contiguous & ~follows) | (live_quote & in_quoted) | structural
        layers["delimiters"] = (follows & ~contiguous) | (live_quote & ~in_quoted)
        return carry._replace(follows_contiguous=int(contiguous[-1] >> _U64(63)))

    def _layers(self, data, length: int, carry: IndexerCarry, final: bool):
        nb = block_count(length, final)
        blocks = np.frombuffer(data, dtype=np.uint8, count=nb * BLOCK).reshape(nb, BLOCK)
        layers = self.classify_blocks(blocks)
        carry = self._resolve(layers, carry, length)
        carry = self._derive(layers, carry)
        return layers, carry

    def index_blocks(self, data, length: int, carry: IndexerCarry, final: bool = True) -> tuple[list[BlockMasks], IndexerCarry]:
        if length == 0:
            return [], carry
        layers, carry = self._layers(data, length, carry, final)
        names = BlockMasks.__slots__
        columns = [layers[n].tolist() for n in names]
        return [BlockMasks(*row) for row in zip(*columns)], carry

    def index_window(self, data, length: int, carry: IndexerCarry, final: bool = True, base: int = 0) -> tuple[IndexTape, IndexerCarry]:
        """Index ``data[:length]``; ``data`` must be zero padded by at least 64 bytes."""
        if length == 0:
            return IndexTape.empty(base), carry
        layers, carry = self._layers(data, length, carry, final)
        fields = np.flatnonzero(np.unpackbits(layers["fields"].view(np.uint8), bitorder="little"))
        delimiters = np.flatnonzero(np.unpackbits(layers["delimiters"].view(np.uint8), bitorder="little"))
        fields = fields[: np.searchsorted(fields, length)]
        delimiters = delimiters[: np.searchsorted(delimiters, length, side="right")]
        return IndexTape(base, fields.astype(np.uint32), delimiters.astype(np.uint32)), carry

    def process_independent(self, blocks: np.ndarray, carry: IndexerCarry = IndexerCarry()) -> tuple[dict[str, np.ndarray], list[IndexerCarry]]:
        """Index many unrelated 64-byte blocks, each starting from ``carry``."""
        layers = self.classify_blocks(blocks)
        nb = blocks.shape[0]
        quote = layers["quote"]
        in_quoted = prefix_xor(quote) ^ (_ALL if carry.in_quoted else _U64(0))
        in_comment = np.zeros(nb, dtype=_U64)
        escaped = np.zeros(nb, dtype=_U64)
        out_quoted = (np.bitwise_count(quote) & 1).astype(np.int64) ^ carry.in_quoted
        out_comment = np.zeros(nb, dtype=np.int64)
        out_backslash = np.zeros(nb, dtype=np.int64)
        if carry.in_comment or carry.follows_backslash:
            slow = np.arange(nb)
        else:
            slow = np.flatnonzero((layers["semicolon"] | layers["backslash"]) != 0)
        cols = [layers[n][slow].tolist() for n in ("newline", "backslash", "quote", "semicolon")]
        for k, nl, bs, q, sc in zip(slow.tolist(), *cols):
            masks = BlockMasks(newline=nl, backslash=bs, quote=q, semicolon=sc)
            after = sweep(masks, carry)
            in_quoted[k] = masks.in_quoted
            in_comment[k] = masks.in_comment
            escaped[k] = masks.escaped
            out_quoted[k] = after.in_quoted
            out_comment[k] = after.in_comment
            out_backslash[k] = after.follows_backslash
        layers["in_quoted"] = in_quoted
        layers["in_comment"] = in_comment
        layers["escaped"] = escaped
        outside = ~(in_quoted | in_comment)
        contiguous = (~(layers["blank"] | layers["special"] | quote) | escaped) & outside
        follows = (contiguous << _U64(1)) | _U64(carry.follows_contiguous)
        live_quote = quote & ~escaped & ~in_comment
        structural = layers["special"] & ~escaped & outside
        layers["contiguous"] = contiguous
        layers["fields"] = (contiguous & ~follows) | (live_quote & in_quoted) | structural
        layers["delimiters"] = (follows & ~contiguous) | (live_quote & ~in_quoted)
        out_contig = (contiguous >> _U64(63)).astype(np.int64)
        carries = [
            IndexerCarry(*c)
            for c in zip(out_quoted.tolist(), out_comment.tolist(), out_contig.tolist(), out_backslash.tolist())
        ]
        return layers, carries
