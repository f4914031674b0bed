"""Shared record types, parser options and the error taxonomy."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional

MAX_NAME_LENGTH = 255
MAX_LABEL_LENGTH = 63
MAX_RDATA_LENGTH = 65535
MAX_TTL = (1 << 31) - 1

CLASS_IN = 1
DEFAULT_TTL = 36000


class ErrorKind(str, enum.Enum):
    SYNTAX = "syntax"
    SEMANTIC = "semantic"
    IO = "io"
    LIMIT_EXCEEDED = "limit-exceeded"


class ParseError(Exception):
    """A located parse failure.

    ``line`` is 1-based; ``column`` is the 1-based byte offset of the offending
    item within its line.
    """

    def __init__(self, kind: ErrorKind, file: str, line: int, column: int, message: str):
        super().__init__(message)
        self.kind = ErrorKind(kind)
        self.file = file
        self.line = line
        self.column = column
        self.message = message

    @property
    def position(self) -> tuple[str, str, int, int]:
        return (self.kind.value, self.file, self.line, self.column)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ParseError):
            return NotImplemented
        return self.position == other.position and self.message == other.message

    def __hash__(self) -> int:
        return hash(self.position)

    def __str__(self) -> str:
        return format_error(self)

    def __repr__(self) -> str:
        return f"ParseError({self.kind.value!r}, {self.file!r}, {self.line}, {self.column}, {self.message!r})"


@dataclass(frozen=True)
class ZoneRecord:
    owner: bytes
    rtype: int
    rclass: int
    ttl: int
    rdata: bytes

    def __post_init__(self) -> None:
        validate_wire_name(self.owner)
        if not 0 <= self.rtype <= 0xFFFF or not 0 <= self.rclass <= 0xFFFF:
            raise ValueError("type and class must be 16-bit values")
        if not 0 <= self.ttl <= MAX_TTL:
            raise ValueError("ttl must be below 2**31")
        if len(self.rdata) > MAX_RDATA_LENGTH:
            raise ValueError("rdata exceeds 65535 octets")


@dataclass(frozen=True)
class ParserOptions:
    default_ttl: int = DEFAULT_TTL
    default_class: int = CLASS_IN
    origin: Optional[bytes] = None
    max_include_depth: int = 10
    strict_mode: bool = False

    def __post_init__(self) -> None:
        if self.max_include_depth < 1:
            raise ValueError("max_include_depth must be at least 1")
        if not 0 <= self.default_ttl <= MAX_TTL:
            raise ValueError("default_ttl out of range")
        if self.origin is not None:
            validate_wire_name(self.origin)


# Receives (owner, rtype, rclass, ttl, rdata); returning False stops the parse.
RecordSink = Callable[[bytes, int, int, int, bytes], Optional[bool]]


def validate_wire_name(octets: bytes) -> None:
    if not octets or len(octets) > MAX_NAME_LENGTH:
        raise ValueError("wire name must hold 1..255 octets")
    pos = 0
    while True:
        length = octets[pos]
        if length == 0:
            if pos != len(octets) - 1:
                raise ValueError("root label before end of wire name")
            return
        if length > MAX_LABEL_LENGTH:
            raise ValueError("label longer than 63 octets")
        pos += length + 1
        if pos >= len(octets):
            raise ValueError("wire name is not terminated by the root label")


_PLAIN = frozenset(range(0x21, 0x7F)) - frozenset(b'.\\"();@$')
_ESCAPED = frozenset(b'.\\"();@$')


def _label_text(label: bytes) -> str:
    out = []
    for octet in label:
        if octet in _PLAIN:
            out.append(chr(octet))
        elif octet in _ESCAPED:
            out.append("\\" + chr(octet))
        else:
            out.append(f"\\{octet:03d}")
    return "".join(out)


def name_to_text(octets: bytes) -> str:
    """Render a wire name in presentation form, always absolute."""
    labels = []
    pos = 0
    while octets[pos]:
        length = octets[pos]
        labels.append(_label_text(octets[pos + 1 : pos + 1 + length]))
        pos += length + 1
    if not labels:
        return "."
    return ".".join(labels) + "."


def record_to_generic_text(record: ZoneRecord) -> str:
    """Render a record in the type-agnostic ``\\#`` notation."""
    text = (
        f"{name_to_text(record.owner)} {record.ttl} CLASS{record.rclass} "
        f"TYPE{record.rtype} \\# {len(record.rdata)}"
    )
    if record.rdata:
        text += " " + record.rdata.hex().upper()
    return text


def format_error(error: ParseError) -> str:
    return f"{error.file}:{error.line}:{error.column}: {error.kind.value}: {error.message}"
