"""Byte-at-a-time reference parser for differential testing.

Written for clarity, not speed. It tokenizes with a plain loop, decodes with
the standard library (``ipaddress``, ``base64``, ``binascii``, ``calendar``)
and shares nothing with the fast path beyond the record types in
:mod:`zonefast.model` and the mnemonic lists in :mod:`zonefast.registry`.
It does not model the fast path's maximum window size.
"""

from __future__ import annotations

import base64
import binascii
import bisect
import calendar
import datetime
import ipaddress
import os
import re
from dataclasses import dataclass, field
from typing import Optional

from .model import ErrorKind, ParseError, ParserOptions, ZoneRecord
from .registry import RRCLASSES, RRTYPES

SYNTAX = ErrorKind.SYNTAX
LIMIT = ErrorKind.LIMIT_EXCEEDED
SEMANTIC = ErrorKind.SEMANTIC

WORD, QUOTED, NEWLINE, OPEN, CLOSE, NUL, UNTERMINATED, EOF = (
    "word", "quoted", "newline", "open", "close", "nul", "unterminated", "eof",
)


@dataclass
class Token:
    kind: str
    start: int
    text: bytes
    line: int = 0
    column: int = 0


@dataclass
class OracleRecordList:
    records: list = field(default_factory=list)
    errors: list = field(default_factory=list)


class OracleError(Exception):
    def __init__(self, kind: ErrorKind, message: str, token: Optional[Token] = None):
        super().__init__(message)
        self.kind = kind
        self.message = message
        self.token = token


def tokenize(data: bytes) -> list[Token]:
    tokens: list[Token] = []
    i, n = 0, len(data)
    while i < n:
        c = data[i : i + 1]
        if c in (b" ", b"\t", b"\r"):
            i += 1
        elif c == b";":
            while i < n and data[i : i + 1] != b"\n":
                i += 1
        elif c == b"\n":
            tokens.append(Token(NEWLINE, i, c))
            i += 1
        elif c == b"(":
            tokens.append(Token(OPEN, i, c))
            i += 1
        elif c == b")":
            tokens.append(Token(CLOSE, i, c))
            i += 1
        elif c == b"\x00":
            tokens.append(Token(NUL, i, c))
            i += 1
        elif c == b'"':
            j = i + 1
            while j < n and data[j : j + 1] != b'"':
                j += 2 if data[j : j + 1] == b"\\" else 1
            if j >= n:
                tokens.append(Token(UNTERMINATED, i, data[i:]))
                i = n
            else:
                tokens.append(Token(QUOTED, i, data[i:j]))
                i = j + 1
        else:
            j = i
            while j < n and data[j : j + 1] not in (b" ", b"\t", b"\r", b"\n", b"\x00", b'"', b";", b"(", b")"):
                j += 2 if data[j : j + 1] == b"\\" else 1
            j = min(j, n)
            tokens.append(Token(WORD, i, data[i:j]))
            i = j
    tokens.append(Token(EOF, n, b""))
    newlines = [k for k in range(n) if data[k] == 0x0A]
    for tok in tokens:
        before = bisect.bisect_left(newlines, tok.start)
        tok.line = before + 1
        tok.column = tok.start - (newlines[before - 1] + 1 if before else 0) + 1
    return tokens


def entries(tokens: list[Token], name: str):
    """Yield ``(items, end_token, first_error)`` per logical entry."""
    items: list[Token] = []
    error: Optional[ParseError] = None
    grouped: Optional[Token] = None

    def err(tok: Token, message: str) -> None:
        nonlocal error
        if error is None:
            error = ParseError(SYNTAX, name, tok.line, tok.column, message)

    for tok in tokens:
        if tok.kind in (WORD, QUOTED):
            items.append(tok)
        elif tok.kind == OPEN:
            if grouped is not None:
                err(tok, "nested parenthesis")
            else:
                grouped = tok
        elif tok.kind == CLOSE:
            if grouped is None:
                err(tok, "unbalanced parenthesis")
            else:
                grouped = None
        elif tok.kind == NUL:
            err(tok, "NUL byte")
        elif tok.kind == UNTERMINATED:
            err(tok, "unterminated string")
        elif tok.kind == NEWLINE:
            if grouped is None:
                yield items, tok, error
                items, error = [], None
        else:
            if grouped is not None:
                err(grouped, "unterminated group")
            yield items, tok, error


# -- text fields ---------------------------------------------------------------


def unescape(text: bytes) -> bytes:
    out = bytearray()
    i = 0
    while i < len(text):
        if text[i : i + 1] != b"\\":
            out += text[i : i + 1]
            i += 1
            continue
        if i + 1 == len(text):
            raise OracleError(SYNTAX, "dangling backslash")
        if re.fullmatch(rb"[0-9]", text[i + 1 : i + 2]):
            m = re.fullmatch(rb"[0-9]{3}", text[i + 1 : i + 4])
            if m is None or int(m.group()) > 255:
                raise OracleError(SYNTAX, "bad decimal escape")
            out.append(int(m.group()))
            i += 4
        elif text[i + 1] == 0:
            raise OracleError(SYNTAX, "escaped NUL")
        else:
            out.append(text[i + 1])
            i += 2
    return bytes(out)


def to_wire(text: bytes, origin: Optional[bytes]) -> bytes:
    if text == b"@":
        if origin is None:
            raise OracleError(SEMANTIC, "no origin")
        return origin
    if text == b".":
        return b"\x00"
    labels: list[bytes] = []
    wire_length = 1

    def close(label: bytearray) -> None:
        nonlocal wire_length
        if len(label) == 0:
            raise OracleError(SYNTAX, "empty label")
        if len(label) > 63:
            raise OracleError(LIMIT, "long label")
        wire_length += len(label) + 1
        if wire_length > 255:
            raise OracleError(LIMIT, "long name")
        labels.append(bytes(label))

    label = bytearray()
    ends_with_dot = False
    i = 0
    while i < len(text):
        ch = text[i : i + 1]
        ends_with_dot = False
        if ch == b"\\":
            if i + 1 == len(text):
                raise OracleError(SYNTAX, "dangling backslash")
            if text[i + 1 : i + 2].isdigit():
                digits = text[i + 1 : i + 4]
                if not re.fullmatch(rb"[0-9]{3}", digits) or int(digits) > 255:
                    raise OracleError(SYNTAX, "bad decimal escape")
                label.append(int(digits))
                i += 4
                continue
            if text[i + 1] == 0:
                raise OracleError(SYNTAX, "escaped NUL")
            label.append(text[i + 1])
            i += 2
        elif ch == b".":
            close(label)
            label = bytearray()
            ends_with_dot = True
            i += 1
        else:
            label += ch
            i += 1
    if not ends_with_dot:
        close(label)
    wire = b"".join(bytes([len(x)]) + x for x in labels)
    if ends_with_dot:
        return wire + b"\x00"
    if origin is None:
        raise OracleError(SEMANTIC, "relative name and no origin")
    if len(wire) + len(origin) > 255:
        raise OracleError(LIMIT, "long name")
    return wire + origin


def decimal(text: bytes) -> int:
    m = re.fullmatch(rb"0*([0-9]{0,30})", text)
    return int(m.group(1) or b"0") if m else 2**100


def number(text: bytes, maximum: int) -> int:
    if not re.fullmatch(rb"[0-9]+", text):
        raise OracleError(SYNTAX, "not a number")
    value = decimal(text)
    if value > maximum:
        raise OracleError(SYNTAX, "number too large")
    return value


def ipv4(text: bytes) -> bytes:
    try:
        return ipaddress.IPv4Address(text.decode("ascii")).packed
    except (UnicodeDecodeError, ValueError):
        raise OracleError(SYNTAX, "bad IPv4 address") from None


def ipv6(text: bytes) -> bytes:
    try:
        if b"%" in text:
            raise ValueError
        return ipaddress.IPv6Address(text.decode("ascii")).packed
    except (UnicodeDecodeError, ValueError):
        raise OracleError(SYNTAX, "bad IPv6 address") from None


def timestamp(text: bytes) -> int:
    if re.fullmatch(rb"[0-9]{14}", text):
        fields = [int(text[a:b]) for a, b in ((0, 4), (4, 6), (6, 8), (8, 10), (10, 12), (12, 14))]
        try:
            moment = datetime.datetime(*fields)
        except ValueError:
            raise OracleError(SYNTAX, "bad date") from None
        return calendar.timegm(moment.timetuple()) % 2**32
    if re.fullmatch(rb"[0-9]{1,10}", text) and int(text) < 2**32:
        return int(text)
    raise OracleError(SYNTAX, "bad timestamp")


def hex_decode(text: bytes) -> bytes:
    if not re.fullmatch(rb"(?:[0-9A-Fa-f]{2})*", text):
        raise OracleError(SYNTAX, "bad hex")
    return binascii.unhexlify(text)


def b64_decode(text: bytes) -> bytes:
    m = re.fullmatch(rb"([A-Za-z0-9+/]*)(=*)", text)
    if m is None or len(m.group(2)) > 2 or (m.group(2) and len(text) % 4):
        raise OracleError(SYNTAX, "bad base64")
    data = m.group(1)
    try:
        return base64.b64decode(data + b"=" * (-len(data) % 4), validate=True)
    except binascii.Error:
        raise OracleError(SYNTAX, "bad base64") from None


def b32hex_decode(text: bytes) -> bytes:
    m = re.fullmatch(rb"([0-9A-Va-v]*)(=*)", text)
    if m is None or len(m.group(2)) > 6 or (m.group(2) and len(text) % 8):
        raise OracleError(SYNTAX, "bad base32hex")
    data = m.group(1)
    try:
        return base64.b32hexdecode(data + b"=" * (-len(data) % 8), casefold=True)
    except binascii.Error:
        raise OracleError(SYNTAX, "bad base32hex") from None


_TYPES = {name.encode(): code for name, code in RRTYPES}
_CLASSES = {name.encode(): code for name, code in RRCLASSES}


def rrtype(text: bytes) -> Optional[int]:
    if text.upper() in _TYPES:
        return _TYPES[text.upper()]
    m = re.fullmatch(rb"[Tt][Yy][Pp][Ee]([0-9]{1,5})", text)
    if m and int(m.group(1)) <= 65535:
        return int(m.group(1))
    return None


def rrclass(text: bytes) -> Optional[int]:
    if text.upper() in _CLASSES:
        return _CLASSES[text.upper()]
    m = re.fullmatch(rb"[Cc][Ll][Aa][Ss][Ss]([0-9]{1,5})", text)
    if m and int(m.group(1)) <= 65535:
        return int(m.group(1))
    return None


def bitmap(codes: list[int]) -> bytes:
    out = b""
    for window in range(256):
        in_window = sorted({c & 0xFF for c in codes if c >> 8 == window})
        if not in_window:
            continue
        bits = bytearray(in_window[-1] // 8 + 1)
        for low in in_window:
            bits[low // 8] |= 1 << (7 - low % 8)
        out += bytes([window, len(bits)]) + bytes(bits)
    return out


# -- RDATA ----------------------------------------------------------------------


class Reader:
    def __init__(self, tokens: list[Token], end: Token, origin: Optional[bytes]):
        self.tokens = tokens
        self.end = end
        self.origin = origin
        self.i = 0

    def take(self) -> Token:
        if self.i == len(self.tokens):
            raise OracleError(SYNTAX, "too few fields", self.end)
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def word(self) -> Token:
        tok = self.take()
        if tok.kind != WORD:
            raise OracleError(SYNTAX, "quoted string not allowed", tok)
        return tok

    def apply(self, fn, *args):
        tok = self.word()
        try:
            return fn(tok.text, *args)
        except OracleError as exc:
            exc.token = tok
            raise

    def int(self, octets: int) -> bytes:
        return self.apply(number, 2 ** (8 * octets) - 1).to_bytes(octets, "big")

    def name(self) -> bytes:
        return self.apply(to_wire, self.origin)

    def rest(self) -> list[Token]:
        out = self.tokens[self.i :]
        self.i = len(self.tokens)
        return out

    def joined(self, decoder, required: bool = True) -> bytes:
        toks = self.rest()
        if not toks:
            if required:
                raise OracleError(SYNTAX, "too few fields", self.end)
            return b""
        for tok in toks:
            if tok.kind != WORD:
                raise OracleError(SYNTAX, "quoted string not allowed", tok)
        try:
            return decoder(b"".join(t.text for t in toks))
        except OracleError as exc:
            exc.token = toks[0]
            raise

    def types(self) -> bytes:
        codes = []
        for tok in self.rest():
            if tok.kind != WORD or rrtype(tok.text) is None:
                raise OracleError(SYNTAX, "bad type", tok)
            codes.append(rrtype(tok.text))
        return bitmap(codes)

    def finish(self) -> None:
        if self.i < len(self.tokens):
            raise OracleError(SYNTAX, "too many fields", self.tokens[self.i])


def char_string(tok: Token) -> bytes:
    body = tok.text[1:] if tok.kind == QUOTED else tok.text
    try:
        value = unescape(body)
    except OracleError as exc:
        exc.token = tok
        raise
    if len(value) > 255:
        raise OracleError(LIMIT, "string too long", tok)
    return bytes([len(value)]) + value


def salt(r: Reader) -> bytes:
    tok = r.word()
    if tok.text == b"-":
        return b"\x00"
    try:
        value = hex_decode(tok.text)
    except OracleError as exc:
        exc.token = tok
        raise
    if len(value) > 255:
        raise OracleError(SYNTAX, "salt too long", tok)
    return bytes([len(value)]) + value


SVC_KEYS = {b"mandatory": 0, b"alpn": 1, b"no-default-alpn": 2, b"port": 3, b"ipv4hint": 4, b"ech": 5, b"ipv6hint": 6}


def svc_key_code(text: bytes) -> int:
    if text in SVC_KEYS:
        return SVC_KEYS[text]
    m = re.fullmatch(rb"key([0-9]{1,5})", text)
    if m and int(m.group(1)) <= 65534:
        return int(m.group(1))
    raise OracleError(SYNTAX, "bad key")


def alpn_ids(value: bytes) -> list[bytes]:
    ids, current, i = [], bytearray(), 0
    while i < len(value):
        ch = value[i : i + 1]
        if ch == b",":
            ids.append(bytes(current))
            current = bytearray()
            i += 1
        elif ch == b"\\":
            if i + 1 == len(value):
                raise OracleError(SYNTAX, "dangling backslash")
            if value[i + 1 : i + 2].isdigit():
                current += unescape(value[i : i + 4])
                i += 4
            else:
                current += unescape(value[i : i + 2])
                i += 2
        else:
            current += ch
            i += 1
    ids.append(bytes(current))
    return ids


def svc_value(key: int, value: Optional[bytes]) -> bytes:
    if key == 2:
        if value is not None:
            raise OracleError(SYNTAX, "no-default-alpn has a value")
        return b""
    if key >= 7:
        return b"" if value is None else unescape(value)
    if value is None or value == b"":
        raise OracleError(SYNTAX, "value required")
    if key == 1:
        out = b""
        for ident in alpn_ids(value):
            if len(ident) == 0 or len(ident) > 255:
                raise OracleError(SYNTAX, "bad alpn")
            out += bytes([len(ident)]) + ident
        return out
    if b"\\" in value:
        raise OracleError(SYNTAX, "escape not allowed")
    if key == 0:
        keys = [svc_key_code(k) for k in value.split(b",")]
        if 0 in keys or len(set(keys)) != len(keys):
            raise OracleError(SYNTAX, "bad mandatory")
        return b"".join(k.to_bytes(2, "big") for k in sorted(keys))
    if key == 3:
        return number(value, 65535).to_bytes(2, "big")
    if key == 4:
        return b"".join(ipv4(v) for v in value.split(b","))
    if key == 5:
        return b64_decode(value)
    return b"".join(ipv6(v) for v in value.split(b","))


def svc_params(r: Reader) -> bytes:
    toks = r.rest()
    seen: dict[int, bytes] = {}
    k = 0
    while k < len(toks):
        tok = toks[k]
        k += 1
        if tok.kind != WORD:
            raise OracleError(SYNTAX, "quoted string not allowed", tok)
        if b"=" in tok.text:
            key_text, value = tok.text.split(b"=", 1)
            if value == b"" and k < len(toks) and toks[k].kind == QUOTED and toks[k].start == tok.start + len(tok.text):
                value = toks[k].text[1:]
                k += 1
        else:
            key_text, value = tok.text, None
        try:
            key = svc_key_code(key_text)
            if key in seen:
                raise OracleError(SYNTAX, "duplicate key")
            seen[key] = svc_value(key, value)
        except OracleError as exc:
            exc.token = tok
            raise
        if len(seen[key]) > 65535:
            raise OracleError(LIMIT, "value too long", tok)
    return b"".join(k.to_bytes(2, "big") + len(v).to_bytes(2, "big") + v for k, v in sorted(seen.items()))


def typed_rdata(rtype: int, r: Reader) -> bytes:
    if rtype == 1:
        out = r.apply(ipv4)
    elif rtype == 28:
        out = r.apply(ipv6)
    elif rtype in (2, 5, 12, 39):
        out = r.name()
    elif rtype == 15:
        out = r.int(2) + r.name()
    elif rtype == 33:
        out = r.int(2) + r.int(2) + r.int(2) + r.name()
    elif rtype == 6:
        out = r.name() + r.name() + b"".join(r.int(4) for _ in range(5))
    elif rtype in (16, 99):
        toks = r.rest()
        if not toks:
            raise OracleError(SYNTAX, "too few fields", r.end)
        return b"".join(char_string(t) for t in toks)
    elif rtype in (43, 59):
        return r.int(2) + r.int(1) + r.int(1) + r.joined(hex_decode)
    elif rtype in (48, 60):
        return r.int(2) + r.int(1) + r.int(1) + r.joined(b64_decode)
    elif rtype == 46:
        tok = r.word()
        code = rrtype(tok.text)
        if code is None:
            raise OracleError(SYNTAX, "bad type", tok)
        out = code.to_bytes(2, "big") + r.int(1) + r.int(1) + r.int(4)
        out += r.apply(timestamp).to_bytes(4, "big") + r.apply(timestamp).to_bytes(4, "big")
        return out + r.int(2) + r.name() + r.joined(b64_decode)
    elif rtype == 47:
        return r.name() + r.types()
    elif rtype == 50:
        out = r.int(1) + r.int(1) + r.int(2) + salt(r)
        tok = r.word()
        try:
            hashed = b32hex_decode(tok.text)
        except OracleError as exc:
            exc.token = tok
            raise
        if not hashed or len(hashed) > 255:
            raise OracleError(SYNTAX, "bad hash length", tok)
        return out + bytes([len(hashed)]) + hashed + r.types()
    elif rtype == 51:
        out = r.int(1) + r.int(1) + r.int(2) + salt(r)
    elif rtype in (64, 65):
        return r.int(2) + r.name() + svc_params(r)
    else:
        raise OracleError(SYNTAX, "no typed format", r.tokens[0] if r.tokens else r.end)
    r.finish()
    return out


def generic_rdata(r: Reader) -> bytes:
    r.take()
    length_tok = r.take()
    if length_tok.kind != WORD or not re.fullmatch(rb"[0-9]+", length_tok.text):
        raise OracleError(SYNTAX, "bad length", length_tok)
    length = decimal(length_tok.text)
    if length > 65535:
        raise OracleError(LIMIT, "length too large", length_tok)
    if length == 0:
        if r.i < len(r.tokens):
            raise OracleError(SYNTAX, "data after zero length", r.tokens[r.i])
        return b""
    data = r.joined(hex_decode, required=False)
    if len(data) != length:
        raise OracleError(SYNTAX, "length mismatch", length_tok)
    return data


def rdata(rtype: int, toks: list[Token], end: Token, origin: Optional[bytes]) -> bytes:
    r = Reader(toks, end, origin)
    if toks and toks[0].kind == WORD and toks[0].text == b"\\#":
        out = generic_rdata(r)
    else:
        out = typed_rdata(rtype, r)
    if len(out) > 65535:
        raise OracleError(LIMIT, "rdata too long", toks[0])
    return out


# -- entries ----------------------------------------------------------------------


class OracleParser:
    def __init__(self, options: ParserOptions):
        self.options = options
        self.origin = options.origin
        self.owner: Optional[bytes] = None
        self.ttl = options.default_ttl
        self.rclass = options.default_class
        self.dollar_ttl: Optional[int] = None
        self.result = OracleRecordList()
        self.open_paths: list[Optional[str]] = []

    def run(self, data: bytes, name: str, path: Optional[str]) -> bool:
        """Parse one file's bytes; returns False once strict mode has stopped the parse."""
        self.open_paths.append(path)
        try:
            for items, end, error in entries(tokenize(data), name):
                if error is None and items:
                    try:
                        self.entry(items, end, path)
                    except OracleError as exc:
                        tok = exc.token
                        error = ParseError(exc.kind, name, tok.line, tok.column, exc.message)
                if error is not None:
                    self.result.errors.append(error)
                    if self.options.strict_mode:
                        return False
        finally:
            self.open_paths.pop()
        return True

    def word_name(self, tok: Token) -> bytes:
        if tok.kind != WORD:
            raise OracleError(SYNTAX, "quoted name", tok)
        try:
            return to_wire(tok.text, self.origin)
        except OracleError as exc:
            exc.token = tok
            raise

    def ttl_value(self, tok: Token) -> int:
        if tok.kind != WORD or not re.fullmatch(rb"[0-9]+", tok.text):
            raise OracleError(SYNTAX, "bad TTL", tok)
        value = decimal(tok.text)
        if value >= 2**32:
            raise OracleError(SYNTAX, "TTL too large", tok)
        if value >= 2**31:
            raise OracleError(SEMANTIC, "TTL above 2^31-1", tok)
        return value

    def entry(self, items: list[Token], end: Token, path: Optional[str]) -> None:
        first = items[0]
        if first.kind == WORD and first.column == 1 and first.text.startswith(b"$"):
            self.directive(items, end, path)
            return
        if first.column == 1:
            owner = self.word_name(first)
            rest = items[1:]
        elif self.owner is None:
            raise OracleError(SEMANTIC, "no owner", first)
        else:
            owner = self.owner
            rest = items
        ttl = rclass = rtype = None
        k = 0
        while rtype is None:
            if k == len(rest):
                raise OracleError(SYNTAX, "no type", end)
            tok = rest[k]
            k += 1
            if tok.kind != WORD:
                raise OracleError(SYNTAX, "quoted header field", tok)
            if re.fullmatch(rb"[0-9]+", tok.text):
                if ttl is not None:
                    raise OracleError(SYNTAX, "second TTL", tok)
                ttl = self.ttl_value(tok)
            elif rrclass(tok.text) is not None:
                if rclass is not None:
                    raise OracleError(SYNTAX, "second class", tok)
                rclass = rrclass(tok.text)
            elif rrtype(tok.text) is not None:
                rtype = rrtype(tok.text)
            else:
                raise OracleError(SYNTAX, "unknown type", tok)
        if ttl is None:
            ttl = self.ttl if self.dollar_ttl is None else self.dollar_ttl
        if rclass is None:
            rclass = self.rclass
        wire = rdata(rtype, rest[k:], end, self.origin)
        self.owner, self.ttl, self.rclass = owner, ttl, rclass
        self.result.records.append(ZoneRecord(owner, rtype, rclass, ttl, wire))

    def directive(self, items: list[Token], end: Token, path: Optional[str]) -> None:
        keyword = items[0].text.upper()
        if keyword not in (b"$ORIGIN", b"$TTL", b"$INCLUDE"):
            raise OracleError(SYNTAX, "unknown directive", items[0])
        if len(items) == 1:
            raise OracleError(SYNTAX, "argument missing", end)
        max_items = 3 if keyword == b"$INCLUDE" else 2
        if len(items) > max_items:
            raise OracleError(SYNTAX, "extra argument", items[max_items])
        if keyword == b"$ORIGIN":
            self.origin = self.word_name(items[1])
            return
        if keyword == b"$TTL":
            self.dollar_ttl = self.ttl_value(items[1])
            return
        target = items[1]
        try:
            filename = unescape(target.text[1:] if target.kind == QUOTED else target.text)
        except OracleError as exc:
            exc.token = target
            raise
        new_origin = self.word_name(items[2]) if len(items) == 3 else None
        fname = os.fsdecode(filename)
        if path is not None and not os.path.isabs(fname):
            fname = os.path.join(os.path.dirname(path), fname)
        if len(self.open_paths) - 1 >= self.options.max_include_depth:
            raise OracleError(LIMIT, "too deep", target)
        if any(p is not None and os.path.realpath(p) == os.path.realpath(fname) for p in self.open_paths):
            raise OracleError(SEMANTIC, "include loop", target)
        try:
            with open(fname, "rb") as handle:
                content = handle.read()
        except OSError:
            raise OracleError(ErrorKind.IO, "cannot read include", target) from None
        saved = self.origin
        if new_origin is not None:
            self.origin = new_origin
        keep_going = self.run(content, fname, fname)
        self.origin = saved
        if not keep_going:
            raise _Stop()


class _Stop(Exception):
    pass


def oracle_parse(data: bytes, options: Optional[ParserOptions] = None, name: str = "<memory>", path: Optional[str] = None) -> OracleRecordList:
    parser = OracleParser(options or ParserOptions())
    try:
        parser.run(bytes(data), name, path)
    except _Stop:
        pass
    return parser.result


def oracle_parse_file(path: str, options: Optional[ParserOptions] = None) -> OracleRecordList:
    try:
        with open(path, "rb") as handle:
            data = handle.read()
    except OSError as exc:
        result = OracleRecordList()
        result.errors.append(ParseError(ErrorKind.IO, path, 1, 1, f"cannot open: {exc.strerror or exc}"))
        return result
    return oracle_parse(data, options, name=path, path=path)
