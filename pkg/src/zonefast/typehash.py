"""Perfect hash over RRTYPE mnemonics.

A mnemonic of at most 16 bytes is loaded as two little-endian 64-bit words,
upper-cased with a SWAR bit trick, and the first word is hashed to an 8-bit
slot of a 256-entry table. The multiplier is found by :func:`find_multiplier`
and committed below; ``tools/gen_tables.py`` rewrites it.
"""

from __future__ import annotations

import random
from typing import Iterable

MASK64 = (1 << 64) - 1
_HIGH = 0x8080808080808080
_LOW7 = 0x7F7F7F7F7F7F7F7F
_TO_A = 0x1F1F1F1F1F1F1F1F  # 0x80 - ord('a')
_PAST_Z = 0x0505050505050505  # 0x80 - (ord('z') + 1)

MAX_MNEMONIC_LENGTH = 16

# BEGIN GENERATED
HASH_MULTIPLIER = 0x02699953fe44f627
HASH_SEED = 2024
# END GENERATED


def fold_upper(word: int) -> int:
    """ASCII upper-case all eight bytes of ``word`` at once."""
    heptets = word & _LOW7
    is_lower = (heptets + _TO_A) & ~(heptets + _PAST_Z) & ~word & _HIGH
    return word ^ (is_lower >> 2)


def load_words(text: bytes) -> tuple[int, int]:
    return (
        fold_upper(int.from_bytes(text[:8], "little")),
        fold_upper(int.from_bytes(text[8:16], "little")),
    )


def hash_word(word: int, multiplier: int = HASH_MULTIPLIER) -> int:
    return ((word * multiplier) & MASK64) >> 56


def slots(mnemonics: Iterable[bytes], multiplier: int) -> list[int]:
    return [hash_word(load_words(m)[0], multiplier) for m in mnemonics]


def find_multiplier(mnemonics: Iterable[bytes], seed: int = 0, max_tries: int = 1_000_000) -> int:
    """Search odd 64-bit multipliers until every mnemonic gets its own slot."""
    keys = list(mnemonics)
    rng = random.Random(seed)
    for _ in range(max_tries):
        multiplier = rng.getrandbits(64) | 1
        if len(set(slots(keys, multiplier))) == len(keys):
            return multiplier
    raise RuntimeError("no injective multiplier found")
