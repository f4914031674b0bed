"""Entry parsing: directives, owner and header defaulting, RDATA dispatch."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Optional

from .indexer import Kernel, get_kernel
from .lexer import MAX_WINDOW, Entry, FileState, IncludeStack, Item, ItemKind, Source, open_source
from .mnemonics import TYPE_TABLE, TypeEntry, class_from_mnemonic, type_from_mnemonic
from .model import MAX_TTL, ErrorKind, ParseError, ParserOptions, RecordSink, ZoneRecord
from .rdata import FieldError, decimal_value, parse_name, parse_rdata, unescape

__all__ = [
    "ParseContext",
    "ParseResult",
    "TYPE_TABLE",
    "TypeEntry",
    "ZoneParser",
    "class_from_mnemonic",
    "parse",
    "parse_records",
    "type_from_mnemonic",
]

_DIRECTIVES = (b"$ORIGIN", b"$TTL", b"$INCLUDE")


@dataclass
class ParseContext:
    options: ParserOptions
    origin: Optional[bytes] = None
    last_owner: Optional[bytes] = None
    last_ttl: int = 0
    last_class: int = 1
    directive_ttl: Optional[int] = None

    @classmethod
    def start(cls, options: ParserOptions) -> "ParseContext":
        return cls(options, options.origin, None, options.default_ttl, options.default_class)


@dataclass
class ParseResult:
    records: int = 0
    errors: list = field(default_factory=list)
    stopped: bool = False

    @property
    def ok(self) -> bool:
        return not self.errors


def parse_ttl(item: Item) -> int:
    text = item.text
    if item.kind != ItemKind.CONTIGUOUS or not text.isdigit():
        raise FieldError(ErrorKind.SYNTAX, "TTL must be a decimal number", item)
    value = decimal_value(text)
    if value > 0xFFFFFFFF:
        raise FieldError(ErrorKind.SYNTAX, "TTL exceeds 32 bits", item)
    if value > MAX_TTL:
        raise FieldError(ErrorKind.SEMANTIC, "TTL exceeds 2^31-1", item)
    return value


def parse_rr_header(ctx: ParseContext, items: list, end: Item) -> tuple[int, int, int, int]:
    """Return ``(ttl, class, type, consumed)`` for the header at the front of ``items``."""
    ttl = rclass = None
    for i, item in enumerate(items):
        if item.kind != ItemKind.CONTIGUOUS:
            raise FieldError(ErrorKind.SYNTAX, "quoted string in record header", item)
        text = item.text
        if text.isdigit():
            if ttl is not None:
                raise FieldError(ErrorKind.SYNTAX, "duplicate TTL", item)
            ttl = parse_ttl(item)
            continue
        code = class_from_mnemonic(text)
        if code is not None:
            if rclass is not None:
                raise FieldError(ErrorKind.SYNTAX, "duplicate class", item)
            rclass = code
            continue
        rtype = type_from_mnemonic(text)
        if rtype is None:
            raise FieldError(ErrorKind.SYNTAX, "unknown type", item)
        if ttl is None:
            ttl = ctx.directive_ttl if ctx.directive_ttl is not None else ctx.last_ttl
        if rclass is None:
            rclass = ctx.last_class
        return ttl, rclass, rtype, i + 1
    raise FieldError(ErrorKind.SYNTAX, "missing type", end)


def _name_item(item: Item, origin: Optional[bytes]) -> bytes:
    if item.kind != ItemKind.CONTIGUOUS:
        raise FieldError(ErrorKind.SYNTAX, "names cannot be quoted", item)
    try:
        return parse_name(item.text, origin)
    except FieldError as exc:
        exc.item = item
        raise


def include_path(including: Optional[str], filename: str) -> str:
    """Resolve an include target relative to the including file's directory."""
    if including is None or os.path.isabs(filename):
        return filename
    return os.path.join(os.path.dirname(including), filename)


class ZoneParser:
    """Streaming zone parser; records are pushed to a sink as they complete."""

    def __init__(
        self,
        options: Optional[ParserOptions] = None,
        kernel: Optional[Kernel | str] = None,
        max_window: int = MAX_WINDOW,
    ):
        self.options = options or ParserOptions()
        self.kernel = kernel if kernel is not None and not isinstance(kernel, str) else get_kernel(kernel)
        self.max_window = max_window

    def parse(self, source: Source, sink: Optional[RecordSink] = None, name: Optional[str] = None) -> ParseResult:
        result = ParseResult()
        ctx = ParseContext.start(self.options)
        stack = IncludeStack(self.options.max_include_depth)
        try:
            try:
                stack.push(open_source(source, name, self.kernel, self.max_window))
            except ParseError as exc:
                self._fail(result, exc)
                return result
            while stack.frames:
                state = stack.top
                entry = state.next_entry()
                if entry.error is not None:
                    self._fail(result, entry.error)
                elif entry.items:
                    try:
                        keep_going = self._entry(ctx, stack, state, entry, sink, result)
                    except FieldError as exc:
                        at = exc.item
                        self._fail(result, ParseError(exc.kind, state.name, at.line, at.column, exc.message))
                    else:
                        if not keep_going:
                            result.stopped = True
                            return result
                if entry.end.kind == ItemKind.END_OF_FILE and stack.top is state:
                    saved = stack.pop()
                    if stack.frames:
                        ctx.origin = saved
        finally:
            stack.close()
        return result

    def _fail(self, result: ParseResult, error: ParseError) -> None:
        if self.options.strict_mode:
            raise error
        result.errors.append(error)

    def _entry(self, ctx, stack, state, entry: Entry, sink, result) -> bool:
        items = entry.items
        first = items[0]
        if first.column == 1 and first.kind == ItemKind.CONTIGUOUS and first.text[:1] == b"$":
            self._directive(ctx, stack, state, entry)
            return True
        if first.column > 1:
            if ctx.last_owner is None:
                raise FieldError(ErrorKind.SEMANTIC, "no previous owner to inherit", first)
            owner = ctx.last_owner
            rest = items
        else:
            owner = _name_item(first, ctx.origin)
            rest = items[1:]
        ttl, rclass, rtype, used = parse_rr_header(ctx, rest, entry.end)
        rdata = parse_rdata(rtype, rest[used:], entry.end, ctx.origin)
        ctx.last_owner, ctx.last_ttl, ctx.last_class = owner, ttl, rclass
        result.records += 1
        if sink is not None and sink(owner, rtype, rclass, ttl, rdata) is False:
            return False
        return True

    def _directive(self, ctx: ParseContext, stack: IncludeStack, state: FileState, entry: Entry) -> None:
        items, end = entry.items, entry.end
        directive = items[0].text.upper()
        if directive not in _DIRECTIVES:
            raise FieldError(ErrorKind.SYNTAX, "unknown directive", items[0])
        limit = 3 if directive == b"$INCLUDE" else 2
        if len(items) < 2:
            raise FieldError(ErrorKind.SYNTAX, "missing directive argument", end)
        if len(items) > limit:
            raise FieldError(ErrorKind.SYNTAX, "too many directive arguments", items[limit])
        if directive == b"$ORIGIN":
            ctx.origin = _name_item(items[1], ctx.origin)
        elif directive == b"$TTL":
            ctx.directive_ttl = parse_ttl(items[1])
        else:
            self._include(ctx, stack, state, items)

    def _include(self, ctx: ParseContext, stack: IncludeStack, state: FileState, items: list) -> None:
        target = items[1]
        raw = target.text[1:] if target.kind == ItemKind.QUOTED else target.text
        try:
            filename = unescape(raw)
        except FieldError as exc:
            exc.item = target
            raise
        origin = _name_item(items[2], ctx.origin) if len(items) == 3 else None
        path = include_path(state.path, os.fsdecode(filename))
        refused = stack.check_include(path)
        if refused is not None:
            raise FieldError(refused[0], refused[1], target)
        try:
            child = open_source(path, None, self.kernel, self.max_window)
        except ParseError as exc:
            raise FieldError(ErrorKind.IO, exc.message, target) from None
        stack.push(child, ctx.origin)
        if origin is not None:
            ctx.origin = origin


def parse(
    source: Source,
    sink: Optional[RecordSink] = None,
    options: Optional[ParserOptions] = None,
    kernel: Optional[Kernel | str] = None,
    name: Optional[str] = None,
    max_window: int = MAX_WINDOW,
) -> ParseResult:
    return ZoneParser(options, kernel, max_window).parse(source, sink, name)


def parse_records(
    source: Source,
    options: Optional[ParserOptions] = None,
    kernel: Optional[Kernel | str] = None,
    name: Optional[str] = None,
    max_window: int = MAX_WINDOW,
) -> tuple[list[ZoneRecord], list[ParseError]]:
    """Parse into a list of records plus the list of errors."""
    records: list[ZoneRecord] = []

    def collect(owner, rtype, rclass, ttl, rdata):
        records.append(ZoneRecord(owner, rtype, rclass, ttl, rdata))

    result = parse(source, collect, options, kernel, name, max_window)
    return records, result.errors
