"""Nibble lookup tables for vectorized byte classification.

A byte ``b`` belongs to a class iff ``table[b & 0x0F] == b``. Slots not
claimed by a member hold a value whose low nibble differs from the slot index,
so no input byte can match them. The constants below are written by
``tools/gen_tables.py`` and must equal :func:`build_nibble_table` output.
"""

from __future__ import annotations

BLANK_MEMBERS = b" \t\r"
SPECIAL_MEMBERS = b"()\x00\n"


def build_nibble_table(members: bytes) -> bytes:
    table = bytearray(16)
    claimed = set()
    for byte in members:
        slot = byte & 0x0F
        if slot in claimed:
            raise ValueError(f"two members share low nibble {slot:#x}")
        if byte & 0x80:
            raise ValueError("members must be 7-bit bytes")
        claimed.add(slot)
        table[slot] = byte
    for slot in range(16):
        if slot not in claimed:
            # high bit set and a different low nibble: never equal to an input byte
            table[slot] = 0x80 | ((slot + 1) & 0x0F)
    return bytes(table)


# BEGIN GENERATED
BLANK_TABLE = bytes.fromhex("208283848586878889098b8c8d0d8f80")
SPECIAL_TABLE = bytes.fromhex("008283848586878828290a8c8d8e8f80")
# END GENERATED
