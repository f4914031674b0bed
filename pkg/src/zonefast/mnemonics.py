"""Type and class mnemonic recognition."""

from __future__ import annotations

from typing import NamedTuple, Optional

from .registry import RRCLASSES, RRTYPES
from .typehash import MAX_MNEMONIC_LENGTH, fold_upper, hash_word, load_words


class TypeEntry(NamedTuple):
    mnemonic: bytes
    code: int
    words: tuple[int, int]


def build_type_table() -> list[Optional[TypeEntry]]:
    table: list[Optional[TypeEntry]] = [None] * 256
    for name, code in RRTYPES:
        mnemonic = name.encode()
        words = load_words(mnemonic)
        slot = hash_word(words[0])
        if table[slot] is not None:
            raise RuntimeError(f"hash collision between {table[slot].mnemonic!r} and {mnemonic!r}")
        table[slot] = TypeEntry(mnemonic, code, words)
    return table


TYPE_TABLE = build_type_table()
_CLASSES = {name.encode(): code for name, code in RRCLASSES}


def _generic_code(text: bytes, prefix: bytes) -> Optional[int]:
    """Value of ``<prefix><digits>`` (case-insensitive prefix, 1-5 digits, at most 65535)."""
    n = len(prefix)
    digits = text[n:]
    if not 1 <= len(digits) <= 5 or not digits.isdigit() or text[:n].upper() != prefix:
        return None
    value = int(digits)
    return value if value <= 0xFFFF else None


def lookup_type(text: bytes) -> Optional[int]:
    """Code of a registered mnemonic via the perfect hash, or ``None``."""
    n = len(text)
    if not 0 < n <= MAX_MNEMONIC_LENGTH:
        return None
    if n <= 8:
        words = (fold_upper(int.from_bytes(text, "little")), 0)
    else:
        words = load_words(text)
    entry = TYPE_TABLE[hash_word(words[0])]
    if entry is not None and entry.words == words and len(entry.mnemonic) == n:
        return entry.code
    return None


def type_from_mnemonic(text: bytes) -> Optional[int]:
    """Type code for a mnemonic or ``TYPE<n>``; ``None`` when neither matches."""
    code = lookup_type(text)
    if code is None:
        code = _generic_code(text, b"TYPE")
    return code


def class_from_mnemonic(text: bytes) -> Optional[int]:
    n = len(text)
    if n == 2:
        return _CLASSES.get(text.upper())
    if n < 6:
        return None
    return _generic_code(text, b"CLASS")
