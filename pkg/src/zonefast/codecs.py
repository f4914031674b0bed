"""Table-driven base16, base32hex and base64 decoders.

Decoders take one contiguous run of encoded text (no whitespace) and return
the decoded octets. Callers concatenate multi-item fields before decoding.
"""

from __future__ import annotations

import numpy as np

_INVALID = 0xFF


class CodecError(ValueError):
    pass


def _table(alphabet: bytes, fold_case: bool) -> bytes:
    table = bytearray([_INVALID]) * 256
    for value, char in enumerate(alphabet):
        table[char] = value
        if fold_case:
            table[ord(chr(char).lower())] = value
    return bytes(table)


_B16 = _table(b"0123456789ABCDEF", fold_case=True)
_B32HEX = _table(b"0123456789ABCDEFGHIJKLMNOPQRSTUV", fold_case=True)
_B64 = _table(b"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/", fold_case=False)

_B16_VALID = bytes(i for i in range(256) if _B16[i] != _INVALID)
_B32HEX_VALID = bytes(i for i in range(256) if _B32HEX[i] != _INVALID)
_B64_VALID = bytes(i for i in range(256) if _B64[i] != _INVALID)

_B16_NP = np.frombuffer(_B16, dtype=np.uint8)

# Vector decoding only pays off past this many input characters.
VECTOR_THRESHOLD = 512


def base16_decode(text: bytes) -> bytes:
    if len(text) & 1:
        raise CodecError("odd number of hex digits")
    if text.translate(None, _B16_VALID):
        raise CodecError("invalid hex digit")
    if len(text) >= VECTOR_THRESHOLD:
        return base16_decode_vector(text)
    digits = text.translate(_B16)
    return bytes(hi << 4 | lo for hi, lo in zip(digits[0::2], digits[1::2]))


def base16_decode_vector(text: bytes) -> bytes:
    """numpy variant of :func:`base16_decode`; identical accept/reject behavior."""
    if len(text) & 1:
        raise CodecError("odd number of hex digits")
    values = _B16_NP[np.frombuffer(text, dtype=np.uint8)]
    if values.size and values.max() == _INVALID:
        raise CodecError("invalid hex digit")
    return ((values[0::2] << 4) | values[1::2]).astype(np.uint8).tobytes()


def _strip_padding(text: bytes, group: int, max_pad: int) -> bytes:
    stripped = text.rstrip(b"=")
    pad = len(text) - len(stripped)
    if pad and (pad > max_pad or len(text) % group):
        raise CodecError("invalid padding")
    return stripped


# residue chars in the last group -> decoded octets
_B32_TAIL = {0: 0, 2: 1, 4: 2, 5: 3, 7: 4}
_B64_TAIL = {0: 0, 2: 1, 3: 2}


def base32hex_decode(text: bytes) -> bytes:
    data = _strip_padding(text, 8, 6)
    if data.translate(None, _B32HEX_VALID):
        raise CodecError("invalid base32hex character")
    tail = _B32_TAIL.get(len(data) % 8)
    if tail is None:
        raise CodecError("invalid base32hex length")
    values = data.translate(_B32HEX)
    out = bytearray()
    full = len(data) - len(data) % 8
    for i in range(0, full, 8):
        acc = 0
        for v in values[i : i + 8]:
            acc = acc << 5 | v
        out += acc.to_bytes(5, "big")
    if tail:
        acc = 0
        rest = values[full:]
        for v in rest:
            acc = acc << 5 | v
        acc >>= len(rest) * 5 - tail * 8
        out += acc.to_bytes(tail, "big")
    return bytes(out)


def base64_decode(text: bytes) -> bytes:
    data = _strip_padding(text, 4, 2)
    if data.translate(None, _B64_VALID):
        raise CodecError("invalid base64 character")
    tail = _B64_TAIL.get(len(data) % 4)
    if tail is None:
        raise CodecError("invalid base64 length")
    values = data.translate(_B64)
    out = bytearray()
    full = len(data) - len(data) % 4
    for i in range(0, full, 4):
        a, b, c, d = values[i : i + 4]
        out += (a << 18 | b << 12 | c << 6 | d).to_bytes(3, "big")
    if tail == 1:
        a, b = values[full:]
        out.append((a << 2 | b >> 4) & 0xFF)
    elif tail == 2:
        a, b, c = values[full:]
        out += ((a << 10 | b << 4 | c >> 2) & 0xFFFF).to_bytes(2, "big")
    return bytes(out)
