"""Presentation-to-wire conversion of RDATA fields and the typed drivers.

Every driver has the signature ``driver(items, end, origin) -> bytes`` where
``items`` are the entry's items after the type, ``end`` is the item closing
the entry (used to locate "missing field" errors) and ``origin`` is the
current origin in wire form, or ``None``.
"""

from __future__ import annotations

from typing import Callable, Optional

from .codecs import CodecError, base16_decode, base32hex_decode, base64_decode
from .lexer import Item, ItemKind
from .mnemonics import type_from_mnemonic
from .model import MAX_LABEL_LENGTH, MAX_NAME_LENGTH, MAX_RDATA_LENGTH, ErrorKind

SYNTAX = ErrorKind.SYNTAX
LIMIT = ErrorKind.LIMIT_EXCEEDED
SEMANTIC = ErrorKind.SEMANTIC

BACKSLASH = 0x5C
DOT = 0x2E
_DIGITS = frozenset(b"0123456789")


class FieldError(Exception):
    """A field-level failure; ``item`` locates it once known."""

    def __init__(self, kind: ErrorKind, message: str, item: Optional[Item] = None):
        super().__init__(message)
        self.kind = kind
        self.message = message
        self.item = item


def _decimal_escape(text: bytes, i: int) -> int:
    """Value of the ``\\DDD`` escape whose backslash sits at ``i``."""
    digits = text[i + 1 : i + 4]
    if len(digits) != 3 or not digits.isdigit():
        raise FieldError(SYNTAX, "decimal escape needs exactly three digits")
    value = int(digits)
    if value > 255:
        raise FieldError(SYNTAX, "decimal escape exceeds 255")
    return value


def unescape(text: bytes) -> bytes:
    """Expand ``\\X`` and ``\\DDD`` escapes."""
    if BACKSLASH not in text:
        return text
    out = bytearray()
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c != BACKSLASH:
            out.append(c)
            i += 1
            continue
        if i + 1 >= n:
            raise FieldError(SYNTAX, "trailing backslash")
        nxt = text[i + 1]
        if nxt in _DIGITS:
            out.append(_decimal_escape(text, i))
            i += 4
        elif nxt == 0:
            raise FieldError(SYNTAX, "escaped NUL byte")
        else:
            out.append(nxt)
            i += 2
    return bytes(out)


# -- names -------------------------------------------------------------------


def _append_label(out: bytearray, label: bytes) -> None:
    if not label:
        raise FieldError(SYNTAX, "empty label")
    if len(label) > MAX_LABEL_LENGTH:
        raise FieldError(LIMIT, "label exceeds 63 octets")
    if len(out) + len(label) + 2 > MAX_NAME_LENGTH:
        raise FieldError(LIMIT, "name exceeds 255 octets")
    out.append(len(label))
    out += label


def _escaped_name(text: bytes, out: bytearray) -> bool:
    """Append the labels of an escaped name to ``out``; return whether it is absolute."""
    label = bytearray()
    i, n = 0, len(text)
    absolute = False
    while i < n:
        c = text[i]
        absolute = False
        if c == BACKSLASH:
            if i + 1 >= n:
                raise FieldError(SYNTAX, "trailing backslash")
            nxt = text[i + 1]
            if nxt in _DIGITS:
                label.append(_decimal_escape(text, i))
                i += 4
                continue
            if nxt == 0:
                raise FieldError(SYNTAX, "escaped NUL byte")
            label.append(nxt)
            i += 2
        elif c == DOT:
            _append_label(out, bytes(label))
            label.clear()
            absolute = True
            i += 1
        else:
            label.append(c)
            i += 1
    if not absolute:
        _append_label(out, bytes(label))
    return absolute


def parse_name(text: bytes, origin: Optional[bytes]) -> bytes:
    """Encode a presentation name as uncompressed wire format.

    Labels are validated left to right. Relative names get ``origin``
    appended; without an origin they are rejected.
    """
    if text == b"@":
        if origin is None:
            raise FieldError(SEMANTIC, "'@' used without an origin")
        return origin
    if text == b".":
        return b"\x00"
    out = bytearray()
    if BACKSLASH not in text:
        absolute = text[-1] == DOT
        for label in (text[:-1] if absolute else text).split(b"."):
            n = len(label)
            if not 0 < n <= MAX_LABEL_LENGTH or len(out) + n + 2 > MAX_NAME_LENGTH:
                _append_label(out, label)  # raises the precise error
            out.append(n)
            out += label
    else:
        absolute = _escaped_name(text, out)
    if absolute:
        out.append(0)
        return bytes(out)
    if origin is None:
        raise FieldError(SEMANTIC, "relative name without an origin")
    if len(out) + len(origin) > MAX_NAME_LENGTH:
        raise FieldError(LIMIT, "name exceeds 255 octets")
    return bytes(out) + origin


# -- scalar fields -------------------------------------------------------------


def decimal_value(digits: bytes) -> int:
    """Value of an all-digit field; anything wider than 64 bits saturates."""
    significant = digits.lstrip(b"0")
    return int(significant or b"0") if len(significant) <= 20 else 1 << 64


def parse_uint(text: bytes, bits: int) -> int:
    if not text.isdigit():
        raise FieldError(SYNTAX, "expected a decimal number")
    value = decimal_value(text)
    if value >> bits:
        raise FieldError(SYNTAX, f"value exceeds {bits} bits")
    return value


def parse_ipv4(text: bytes) -> bytes:
    parts = text.split(b".")
    if len(parts) != 4:
        raise FieldError(SYNTAX, "IPv4 address needs four octets")
    out = bytearray(4)
    for i, part in enumerate(parts):
        if not 1 <= len(part) <= 3 or not part.isdigit() or (part[0] == 0x30 and len(part) > 1):
            raise FieldError(SYNTAX, "invalid IPv4 octet")
        value = int(part)
        if value > 255:
            raise FieldError(SYNTAX, "IPv4 octet exceeds 255")
        out[i] = value
    return bytes(out)


_HEX = frozenset(b"0123456789abcdefABCDEF")


def _hex_groups(side: bytes, allow_v4_tail: bool) -> list[int]:
    if not side:
        return []
    groups: list[int] = []
    parts = side.split(b":")
    for i, part in enumerate(parts):
        if allow_v4_tail and i == len(parts) - 1 and DOT in part:
            v4 = parse_ipv4(part)
            groups += (v4[0] << 8 | v4[1], v4[2] << 8 | v4[3])
            continue
        if not 1 <= len(part) <= 4 or not _HEX.issuperset(part):
            raise FieldError(SYNTAX, "invalid IPv6 group")
        groups.append(int(part, 16))
    return groups


def parse_ipv6(text: bytes) -> bytes:
    if b"%" in text:
        raise FieldError(SYNTAX, "scoped IPv6 addresses are not allowed")
    halves = text.split(b"::")
    try:
        if len(halves) == 1:
            groups = _hex_groups(text, True)
            if len(groups) != 8:
                raise FieldError(SYNTAX, "IPv6 address needs eight groups")
        elif len(halves) == 2:
            head = _hex_groups(halves[0], False)
            tail = _hex_groups(halves[1], True)
            if len(head) + len(tail) > 7:
                raise FieldError(SYNTAX, "too many IPv6 groups")
            groups = head + [0] * (8 - len(head) - len(tail)) + tail
        else:
            raise FieldError(SYNTAX, "more than one '::'")
    except FieldError as exc:
        exc.message = "invalid IPv6 address: " + exc.message
        raise
    return b"".join(g.to_bytes(2, "big") for g in groups)


def _days_from_civil(year: int, month: int, day: int) -> int:
    """Days since 1970-01-01 in the proleptic Gregorian calendar."""
    year -= month <= 2
    era = year // 400
    yoe = year - era * 400
    doy = (153 * (month + (-3 if month > 2 else 9)) + 2) // 5 + day - 1
    doe = yoe * 365 + yoe // 4 - yoe // 100 + doy
    return era * 146097 + doe - 719468


def _month_days(year: int, month: int) -> int:
    if month == 2:
        leap = year % 4 == 0 and (year % 100 != 0 or year % 400 == 0)
        return 29 if leap else 28
    return 30 if month in (4, 6, 9, 11) else 31


def parse_timestamp(text: bytes) -> int:
    if not text.isdigit():
        raise FieldError(SYNTAX, "timestamp must be digits")
    if len(text) == 14:
        year, month, day = int(text[0:4]), int(text[4:6]), int(text[6:8])
        hour, minute, second = int(text[8:10]), int(text[10:12]), int(text[12:14])
        if (
            year < 1
            or not 1 <= month <= 12
            or not 1 <= day <= _month_days(year, month)
            or hour > 23
            or minute > 59
            or second > 59
        ):
            raise FieldError(SYNTAX, "invalid timestamp")
        seconds = _days_from_civil(year, month, day) * 86400 + hour * 3600 + minute * 60 + second
        return seconds % (1 << 32)
    if len(text) > 10:
        raise FieldError(SYNTAX, "invalid timestamp")
    value = int(text)
    if value >> 32:
        raise FieldError(SYNTAX, "timestamp exceeds 32 bits")
    return value


def parse_string(item: Item) -> bytes:
    """One length-prefixed character string."""
    text = item.text[1:] if item.kind == ItemKind.QUOTED else item.text
    value = unescape(text)
    if len(value) > 255:
        raise FieldError(LIMIT, "character string exceeds 255 octets")
    return bytes((len(value),)) + value


def encode_type_bitmap(codes) -> bytes:
    windows: dict[int, bytearray] = {}
    for code in sorted(set(codes)):
        bitmap = windows.setdefault(code >> 8, bytearray())
        low = code & 0xFF
        while len(bitmap) <= low >> 3:
            bitmap.append(0)
        bitmap[low >> 3] |= 0x80 >> (low & 7)
    out = bytearray()
    for window in sorted(windows):
        bitmap = windows[window]
        out += bytes((window, len(bitmap))) + bitmap
    return bytes(out)


# -- item plumbing -------------------------------------------------------------


def _at(item: Item, fn, *args):
    """Call ``fn(item.text, *args)``, blaming failures on ``item``."""
    if item.kind != ItemKind.CONTIGUOUS:
        raise FieldError(SYNTAX, "unexpected quoted string", item)
    try:
        return fn(item.text, *args)
    except FieldError as exc:
        exc.item = item
        raise
    except CodecError as exc:
        raise FieldError(SYNTAX, str(exc), item) from None


class Fields:
    """Cursor over an entry's RDATA items."""

    __slots__ = ("items", "end", "pos")

    def __init__(self, items: list, end: Item):
        self.items = items
        self.end = end
        self.pos = 0

    def next(self) -> Item:
        if self.pos >= len(self.items):
            raise FieldError(SYNTAX, "missing RDATA field", self.end)
        item = self.items[self.pos]
        self.pos += 1
        return item

    def rest(self) -> list:
        items = self.items[self.pos :]
        self.pos = len(self.items)
        return items

    def more(self) -> bool:
        return self.pos < len(self.items)

    def done(self) -> None:
        if self.pos < len(self.items):
            raise FieldError(SYNTAX, "trailing RDATA field", self.items[self.pos])

    def u8(self) -> bytes:
        return bytes((_at(self.next(), parse_uint, 8),))

    def u16(self) -> bytes:
        return _at(self.next(), parse_uint, 16).to_bytes(2, "big")

    def u32(self) -> bytes:
        return _at(self.next(), parse_uint, 32).to_bytes(4, "big")

    def name(self, origin: Optional[bytes]) -> bytes:
        return _at(self.next(), parse_name, origin)

    def rtype(self) -> bytes:
        item = self.next()
        code = _at(item, type_from_mnemonic)
        if code is None:
            raise FieldError(SYNTAX, "unknown type", item)
        return code.to_bytes(2, "big")

    def timestamp(self) -> bytes:
        return _at(self.next(), parse_timestamp).to_bytes(4, "big")

    def encoded(self, decode, at_least_one: bool = True) -> bytes:
        """Concatenate the remaining items and decode them as one run."""
        items = self.rest()
        if not items:
            if at_least_one:
                raise FieldError(SYNTAX, "missing RDATA field", self.end)
            return b""
        for item in items:
            if item.kind != ItemKind.CONTIGUOUS:
                raise FieldError(SYNTAX, "unexpected quoted string", item)
        return _at(items[0]._replace(text=b"".join(i.text for i in items)), decode)

    def bitmap(self) -> bytes:
        codes = []
        for item in self.rest():
            code = _at(item, type_from_mnemonic)
            if code is None:
                raise FieldError(SYNTAX, "unknown type in bitmap", item)
            codes.append(code)
        return encode_type_bitmap(codes)


# -- generic notation --------------------------------------------------------


def is_generic(items: list) -> bool:
    return bool(items) and items[0].kind == ItemKind.CONTIGUOUS and items[0].text == b"\\#"


def parse_generic_rdata(items: list, end: Item) -> bytes:
    """``\\# <length> <hex>...`` where ``items[0]`` is the ``\\#`` marker."""
    fields = Fields(items, end)
    fields.next()
    length_item = fields.next()
    if length_item.kind != ItemKind.CONTIGUOUS or not length_item.text.isdigit():
        raise FieldError(SYNTAX, "generic RDATA length must be a decimal number", length_item)
    length = decimal_value(length_item.text)
    if length > MAX_RDATA_LENGTH:
        raise FieldError(LIMIT, "generic RDATA length exceeds 65535", length_item)
    if length == 0:
        if fields.more():
            raise FieldError(SYNTAX, "generic RDATA of length 0 has data", fields.next())
        return b""
    data = fields.encoded(base16_decode, at_least_one=False)
    if len(data) != length:
        raise FieldError(SYNTAX, "generic RDATA length mismatch", length_item)
    return data


# -- typed drivers -------------------------------------------------------------

Driver = Callable[[list, Item, Optional[bytes]], bytes]


def parse_a(items, end, origin):
    f = Fields(items, end)
    out = _at(f.next(), parse_ipv4)
    f.done()
    return out


def parse_aaaa(items, end, origin):
    f = Fields(items, end)
    out = _at(f.next(), parse_ipv6)
    f.done()
    return out


def parse_single_name(items, end, origin):
    f = Fields(items, end)
    out = f.name(origin)
    f.done()
    return out


def parse_mx(items, end, origin):
    f = Fields(items, end)
    out = f.u16() + f.name(origin)
    f.done()
    return out


def parse_srv(items, end, origin):
    f = Fields(items, end)
    out = f.u16() + f.u16() + f.u16() + f.name(origin)
    f.done()
    return out


def parse_soa(items, end, origin):
    f = Fields(items, end)
    out = f.name(origin) + f.name(origin) + f.u32() + f.u32() + f.u32() + f.u32() + f.u32()
    f.done()
    return out


def parse_txt(items, end, origin):
    if not items:
        raise FieldError(SYNTAX, "at least one character string required", end)
    out = bytearray()
    for item in items:
        try:
            out += parse_string(item)
        except FieldError as exc:
            exc.item = item
            raise
    return bytes(out)


def parse_ds(items, end, origin):
    f = Fields(items, end)
    return f.u16() + f.u8() + f.u8() + f.encoded(base16_decode)


def parse_dnskey(items, end, origin):
    f = Fields(items, end)
    return f.u16() + f.u8() + f.u8() + f.encoded(base64_decode)


def parse_rrsig(items, end, origin):
    f = Fields(items, end)
    head = f.rtype() + f.u8() + f.u8() + f.u32() + f.timestamp() + f.timestamp() + f.u16()
    return head + f.name(origin) + f.encoded(base64_decode)


def parse_nsec(items, end, origin):
    f = Fields(items, end)
    return f.name(origin) + f.bitmap()


def _salt(f: Fields) -> bytes:
    item = f.next()
    if item.kind == ItemKind.CONTIGUOUS and item.text == b"-":
        return b"\x00"
    salt = _at(item, base16_decode)
    if len(salt) > 255:
        raise FieldError(SYNTAX, "salt exceeds 255 octets", item)
    return bytes((len(salt),)) + salt


def parse_nsec3(items, end, origin):
    f = Fields(items, end)
    head = f.u8() + f.u8() + f.u16() + _salt(f)
    item = f.next()
    hashed = _at(item, base32hex_decode)
    if not 1 <= len(hashed) <= 255:
        raise FieldError(SYNTAX, "invalid next hashed owner length", item)
    return head + bytes((len(hashed),)) + hashed + f.bitmap()


def parse_nsec3param(items, end, origin):
    f = Fields(items, end)
    out = f.u8() + f.u8() + f.u16() + _salt(f)
    f.done()
    return out


# -- SVCB / HTTPS ----------------------------------------------------------------

_SVC_NAMES = {
    b"mandatory": 0,
    b"alpn": 1,
    b"no-default-alpn": 2,
    b"port": 3,
    b"ipv4hint": 4,
    b"ech": 5,
    b"ipv6hint": 6,
}


def svc_key(text: bytes) -> int:
    code = _SVC_NAMES.get(text)
    if code is not None:
        return code
    digits = text[3:]
    if text[:3] == b"key" and 1 <= len(digits) <= 5 and digits.isdigit():
        code = int(digits)
        if code < 65535:
            return code
    raise FieldError(SYNTAX, "unknown service parameter key")


def _plain(value: bytes) -> bytes:
    if BACKSLASH in value:
        raise FieldError(SYNTAX, "escapes are not allowed in this parameter")
    return value


def _split_escaped_list(value: bytes) -> list[bytes]:
    """Split on unescaped commas, expanding escapes in each element."""
    elements: list[bytes] = []
    current = bytearray()
    i, n = 0, len(value)
    while i < n:
        c = value[i]
        if c == BACKSLASH:
            if i + 1 >= n:
                raise FieldError(SYNTAX, "trailing backslash")
            nxt = value[i + 1]
            if nxt in _DIGITS:
                current.append(_decimal_escape(value, i))
                i += 4
                continue
            if nxt == 0:
                raise FieldError(SYNTAX, "escaped NUL byte")
            current.append(nxt)
            i += 2
        elif c == 0x2C:
            elements.append(bytes(current))
            current.clear()
            i += 1
        else:
            current.append(c)
            i += 1
    elements.append(bytes(current))
    return elements


def _svc_value(key: int, value: Optional[bytes]) -> bytes:
    if key == 2:
        if value is not None:
            raise FieldError(SYNTAX, "no-default-alpn takes no value")
        return b""
    if key > 6:
        return unescape(value) if value is not None else b""
    if not value:
        raise FieldError(SYNTAX, "service parameter requires a value")
    if key == 1:
        out = bytearray()
        for element in _split_escaped_list(value):
            if not 1 <= len(element) <= 255:
                raise FieldError(SYNTAX, "invalid alpn identifier length")
            out.append(len(element))
            out += element
        return bytes(out)
    value = _plain(value)
    if key == 0:
        codes = []
        for name in value.split(b","):
            code = svc_key(name)
            if code == 0 or code in codes:
                raise FieldError(SYNTAX, "invalid mandatory key list")
            codes.append(code)
        return b"".join(c.to_bytes(2, "big") for c in sorted(codes))
    if key == 3:
        return parse_uint(value, 16).to_bytes(2, "big")
    if key == 4:
        return b"".join(parse_ipv4(part) for part in value.split(b","))
    if key == 5:
        try:
            return base64_decode(value)
        except CodecError as exc:
            raise FieldError(SYNTAX, str(exc)) from None
    return b"".join(parse_ipv6(part) for part in value.split(b","))


def parse_svc_params(items: list) -> bytes:
    params: dict[int, bytes] = {}
    i = 0
    while i < len(items):
        item = items[i]
        i += 1
        if item.kind != ItemKind.CONTIGUOUS:
            raise FieldError(SYNTAX, "unexpected quoted string", item)
        key_text, eq, value = item.text.partition(b"=")
        if eq and not value and i < len(items):
            nxt = items[i]
            if nxt.kind == ItemKind.QUOTED and nxt.start == item.start + item.length:
                value = nxt.text[1:]
                i += 1
        try:
            key = svc_key(key_text)
            if key in params:
                raise FieldError(SYNTAX, "duplicate service parameter")
            wire = _svc_value(key, value if eq else None)
        except FieldError as exc:
            exc.item = item
            raise
        if len(wire) > 0xFFFF:
            raise FieldError(LIMIT, "service parameter value too long", item)
        params[key] = wire
    return b"".join(k.to_bytes(2, "big") + len(v).to_bytes(2, "big") + v for k, v in sorted(params.items()))


def parse_svcb(items, end, origin):
    f = Fields(items, end)
    return f.u16() + f.name(origin) + parse_svc_params(f.rest())


DRIVERS: dict[int, Driver] = {
    1: parse_a,
    2: parse_single_name,  # NS
    5: parse_single_name,  # CNAME
    6: parse_soa,
    12: parse_single_name,  # PTR
    15: parse_mx,
    16: parse_txt,
    28: parse_aaaa,
    33: parse_srv,
    39: parse_single_name,  # DNAME
    43: parse_ds,
    46: parse_rrsig,
    47: parse_nsec,
    48: parse_dnskey,
    50: parse_nsec3,
    51: parse_nsec3param,
    59: parse_ds,  # CDS
    60: parse_dnskey,  # CDNSKEY
    64: parse_svcb,
    65: parse_svcb,  # HTTPS
    99: parse_txt,  # SPF
}


def parse_rdata(rtype: int, items: list, end: Item, origin: Optional[bytes]) -> bytes:
    """Dispatch to the typed driver, or the generic form, and enforce the size limit."""
    if is_generic(items):
        rdata = parse_generic_rdata(items, end)
    else:
        driver = DRIVERS.get(rtype)
        if driver is None:
            at = items[0] if items else end
            raise FieldError(SYNTAX, "type has no presentation format; use generic notation", at)
        rdata = driver(items, end, origin)
    if len(rdata) > MAX_RDATA_LENGTH:
        raise FieldError(LIMIT, "RDATA exceeds 65535 octets", items[0])
    return rdata
