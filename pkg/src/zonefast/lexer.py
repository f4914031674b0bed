"""Window management and item extraction on top of the stage-1 tapes.

A :class:`FileState` indexes its input one window at a time. The window is
cut just before the last field it contains (or just after it, when that field
is a single structural byte), so a token straddling the window edge is always
re-indexed whole by the next window. If a window holds no cut point the window
doubles, up to ``max_window``.
"""

from __future__ import annotations

import enum
import os
import sys
from typing import BinaryIO, NamedTuple, Optional, Union

import numpy as np

from .indexer import BLOCK, ZERO_CARRY, IndexerCarry, Kernel, get_kernel
from .model import ErrorKind, ParseError

KiB = 1024
MiB = 1024 * KiB
INITIAL_WINDOW = 64 * KiB
MAX_WINDOW = 1 * MiB


class ItemKind(enum.IntEnum):
    CONTIGUOUS = 0
    QUOTED = 1
    NEWLINE = 2
    OPEN_PAREN = 3
    CLOSE_PAREN = 4
    END_OF_FILE = 5


# internal tape kinds that surface as errors from take()
_NUL = 6
_UNTERMINATED = 7

_CONTIGUOUS = int(ItemKind.CONTIGUOUS)
_QUOTED = int(ItemKind.QUOTED)
_NEWLINE = int(ItemKind.NEWLINE)
_OPEN = int(ItemKind.OPEN_PAREN)
_CLOSE = int(ItemKind.CLOSE_PAREN)

_KIND_OF_BYTE = np.zeros(256, dtype=np.uint8)
_KIND_OF_BYTE[ord("\n")] = _NEWLINE
_KIND_OF_BYTE[ord("(")] = _OPEN
_KIND_OF_BYTE[ord(")")] = _CLOSE
_KIND_OF_BYTE[0] = _NUL
_KIND_OF_BYTE[ord('"')] = _QUOTED
_STRUCTURAL_BYTES = frozenset(b"\n()\x00")
_KIND_MEMBERS = tuple(ItemKind) + (_NUL, _UNTERMINATED)


class Item(NamedTuple):
    kind: ItemKind
    start: int
    length: int
    line: int
    column: int
    text: bytes = b""

    @property
    def quoted(self) -> bool:
        return self.kind == ItemKind.QUOTED


class Entry(NamedTuple):
    """One logical entry: its items, the item that ended it, and the first lexical error."""

    items: list
    end: Item
    error: Optional[ParseError]


Source = Union[bytes, bytearray, memoryview, str, os.PathLike, BinaryIO]


class FileState:
    def __init__(
        self,
        name: str,
        data: Optional[bytes] = None,
        stream: Optional[BinaryIO] = None,
        kernel: Optional[Kernel] = None,
        max_window: int = MAX_WINDOW,
        path: Optional[str] = None,
    ):
        if max_window < BLOCK or max_window % BLOCK:
            raise ValueError("max_window must be a positive multiple of 64")
        self.name = name
        self.path = path
        self.kernel = kernel if kernel is not None else get_kernel()
        self.max_window = max_window
        self.window = min(INITIAL_WINDOW, max_window)
        self._stream = stream
        self._stream_done = stream is None
        self._data = bytes(data) if data is not None else b""
        self._data_base = 0
        self._pos = 0
        self._carry: IndexerCarry = ZERO_CARRY
        self._line = 1
        self._line_start = 0
        self._pad = np.zeros(max_window + 2 * BLOCK, dtype=np.uint8)
        self._at_eof = False
        self._fatal: Optional[ParseError] = None
        self._items: list = []
        # indexes into _items of every item that is not contiguous or quoted
        self._marks: list = []
        self._mark = 0
        self._cursor = 0
        self.grouped = False
        self._group_at: tuple[int, int] = (0, 0)

    # -- buffer management -------------------------------------------------

    def _fill(self, upto: int) -> None:
        if self._stream_done or self._data_base + len(self._data) >= upto:
            return
        keep = self._data[self._pos - self._data_base :]
        chunks = [keep]
        have = self._pos + len(keep)
        while have < upto:
            chunk = self._stream.read(max(upto - have, self.window))
            if not chunk:
                self._stream_done = True
                break
            chunks.append(chunk)
            have += len(chunk)
        self._data = b"".join(chunks)
        self._data_base = self._pos

    @property
    def buffer_window(self) -> tuple[int, int]:
        return self._pos, self._pos + self.window

    def _refill(self) -> None:
        """Index the next window and queue its complete items."""
        self._items, self._marks = [], []
        self._cursor = self._mark = 0
        while True:
            begin = self._pos
            self._fill(begin + self.window + 1)
            avail = self._data_base + len(self._data) - begin
            final = self._stream_done and avail <= self.window
            n = avail if final else self.window
            offset = begin - self._data_base
            pad = self._pad
            pad[:n] = np.frombuffer(self._data, dtype=np.uint8, count=n, offset=offset)
            pad[n : n + 2 * BLOCK] = 0
            tape, carry = self.kernel.index_window(pad, n, self._carry, final, base=begin)
            fields = tape.fields.astype(np.int64)
            delimiters = tape.delimiters.astype(np.int64)
            if final:
                cut = n
            elif fields.shape[0] == 0:
                cut = n
            else:
                # restart the next window where no item, quote or comment is open
                last = int(fields[-1])
                carry = ZERO_CARRY
                if int(pad[last]) in _STRUCTURAL_BYTES:
                    cut = last + 1
                elif delimiters.shape[0] == np.count_nonzero(_KIND_OF_BYTE[pad[fields]] <= _QUOTED):
                    # the last item is complete: cut just past it
                    end = int(delimiters[-1])
                    cut = end + 1 if pad[last] == 0x22 else end
                else:
                    cut = last
                    fields = fields[:-1]
                if cut == 0:
                    if self.window < self.max_window:
                        self.window = min(self.window * 2, self.max_window)
                        continue
                    line, column = self._position(begin)
                    raise ParseError(
                        ErrorKind.LIMIT_EXCEEDED,
                        self.name,
                        line,
                        column,
                        f"item exceeds the maximum window of {self.max_window} bytes",
                    )
            self._carry = carry
            self._queue(pad, begin, cut, fields, delimiters, final)
            self._pos = begin + cut
            if final:
                self._at_eof = True
            return

    def _queue(self, pad, begin, cut, fields, delimiters, final) -> None:
        newlines = np.flatnonzero(pad[:cut] == 0x0A)
        if fields.shape[0]:
            kinds = _KIND_OF_BYTE[pad[fields]].astype(np.int64)
            needs = (kinds == _CONTIGUOUS) | (kinds == _QUOTED)
            wanted = int(np.count_nonzero(needs))
            lengths = np.ones(fields.shape[0], dtype=np.int64)
            have = min(wanted, delimiters.shape[0])
            slots = np.flatnonzero(needs)
            lengths[slots[:have]] = delimiters[:have] - fields[slots[:have]]
            if have < wanted:
                # only possible at end of input: a quote that never closes
                kinds[slots[have]] = _UNTERMINATED
                lengths[slots[have]] = 1
                kinds = kinds[: slots[have] + 1]
                fields = fields[: slots[have] + 1]
                lengths = lengths[: slots[have] + 1]
            before = np.searchsorted(newlines, fields)
            # slot 0 stands for the newline ending the line in progress at ``begin``
            previous = np.concatenate(([self._line_start - begin - 1], newlines))
            line_starts = previous[before] + 1 + begin
            starts = fields + begin
            offsets = (fields + (begin - self._data_base)).tolist()
            data = self._data
            texts = [data[o : o + n] for o, n in zip(offsets, lengths.tolist())]
            self._items = list(
                map(
                    Item,
                    [_KIND_MEMBERS[k] for k in kinds.tolist()],
                    starts.tolist(),
                    lengths.tolist(),
                    (before + self._line).tolist(),
                    (starts - line_starts + 1).tolist(),
                    texts,
                )
            )
            self._marks = np.flatnonzero(kinds > _QUOTED).tolist()
        self._line += int(newlines.shape[0])
        if newlines.shape[0]:
            self._line_start = begin + int(newlines[-1]) + 1

    def _position(self, offset: int) -> tuple[int, int]:
        """Line and column of ``offset``, which must lie in the current window."""
        rel = offset - self._pos
        seg = np.frombuffer(self._data, dtype=np.uint8, count=rel, offset=self._pos - self._data_base)
        nl = np.flatnonzero(seg == 0x0A)
        if nl.shape[0]:
            return self._line + int(nl.shape[0]), rel - int(nl[-1])
        return self._line, offset - self._line_start + 1

    def _eof_item(self) -> Item:
        return Item(ItemKind.END_OF_FILE, self._pos, 0, self._line, self._pos - self._line_start + 1)

    # -- item access -------------------------------------------------------

    def _advance_window(self) -> bool:
        """Make items available; False at end of input (or after a fatal error)."""
        while self._cursor == len(self._items):
            if self._at_eof or self._fatal is not None:
                return False
            try:
                self._refill()
            except ParseError as exc:
                self._fatal = exc
                raise
        return True

    def _lexical_error(self, item: Item) -> ParseError:
        message = "NUL byte in input" if item.kind == _NUL else "unterminated quoted string"
        return ParseError(ErrorKind.SYNTAX, self.name, item.line, item.column, message)

    def take(self) -> Item:
        """Return the next item, re-indexing as windows are exhausted."""
        if not self._advance_window():
            return self._eof_item()
        item = self._items[self._cursor]
        if self._mark < len(self._marks) and self._marks[self._mark] == self._cursor:
            self._mark += 1
        self._cursor += 1
        if item.kind > _CLOSE:
            raise self._lexical_error(item)
        return item

    def take_entry_item(self) -> Item:
        """Like :meth:`take`, but resolves parentheses.

        Returns only contiguous and quoted items, the newline ending an entry,
        and end of file.
        """
        while True:
            item = self.take()
            kind = item.kind
            if kind == ItemKind.OPEN_PAREN:
                if self.grouped:
                    raise ParseError(ErrorKind.SYNTAX, self.name, item.line, item.column, "nested opening parenthesis")
                self.grouped = True
                self._group_at = (item.line, item.column)
            elif kind == ItemKind.CLOSE_PAREN:
                if not self.grouped:
                    raise ParseError(ErrorKind.SYNTAX, self.name, item.line, item.column, "closing parenthesis without opening parenthesis")
                self.grouped = False
            elif kind == ItemKind.NEWLINE:
                if not self.grouped:
                    return item
            elif kind == ItemKind.END_OF_FILE:
                if self.grouped:
                    self.grouped = False
                    line, column = self._group_at
                    raise ParseError(ErrorKind.SYNTAX, self.name, line, column, "unterminated group")
                return item
            else:
                return item

    def next_entry(self) -> Entry:
        """Collect one logical entry.

        Runs of plain items are copied in one slice; only the structural items
        between them are looked at individually. After a lexical error the
        rest of the entry is still consumed so that parsing resumes at the
        next entry; only the first error is kept.
        """
        items: list = []
        error: Optional[ParseError] = None
        while True:
            try:
                more = self._advance_window()
            except ParseError as exc:
                return Entry(items, self._eof_item(), error or exc)
            if not more:
                if self.grouped:
                    self.grouped = False
                    if error is None:
                        line, column = self._group_at
                        error = ParseError(ErrorKind.SYNTAX, self.name, line, column, "unterminated group")
                return Entry(items, self._eof_item(), error)
            cursor = self._cursor
            marks = self._marks
            stop = marks[self._mark] if self._mark < len(marks) else len(self._items)
            if stop > cursor:
                items += self._items[cursor:stop]
                self._cursor = stop
                continue
            item = self._items[cursor]
            self._cursor = cursor + 1
            self._mark += 1
            kind = item.kind
            if kind == _NEWLINE:
                if not self.grouped:
                    return Entry(items, item, error)
            elif kind == _OPEN:
                if self.grouped:
                    if error is None:
                        error = ParseError(ErrorKind.SYNTAX, self.name, item.line, item.column, "nested opening parenthesis")
                else:
                    self.grouped = True
                    self._group_at = (item.line, item.column)
            elif kind == _CLOSE:
                if not self.grouped:
                    if error is None:
                        error = ParseError(
                            ErrorKind.SYNTAX, self.name, item.line, item.column, "closing parenthesis without opening parenthesis"
                        )
                else:
                    self.grouped = False
            elif error is None:
                error = self._lexical_error(item)

    def close(self) -> None:
        if self._stream is not None and self._stream is not sys.stdin.buffer:
            self._stream.close()
        self._stream = None
        self._stream_done = True


def open_source(
    source: Source,
    name: Optional[str] = None,
    kernel: Optional[Kernel] = None,
    max_window: int = MAX_WINDOW,
) -> FileState:
    """Open a path, ``"-"`` (standard input), a binary stream or an in-memory buffer."""
    if isinstance(source, (bytes, bytearray, memoryview)):
        return FileState(name or "<memory>", data=bytes(source), kernel=kernel, max_window=max_window)
    if isinstance(source, (str, os.PathLike)):
        path = os.fspath(source)
        if path == "-":
            return FileState(name or "-", stream=sys.stdin.buffer, kernel=kernel, max_window=max_window)
        try:
            stream = open(path, "rb")
        except OSError as exc:
            raise ParseError(ErrorKind.IO, name or path, 1, 1, f"cannot open: {exc.strerror or exc}") from exc
        return FileState(name or path, stream=stream, kernel=kernel, max_window=max_window, path=path)
    return FileState(name or getattr(source, "name", "<stream>"), stream=source, kernel=kernel, max_window=max_window)


class IncludeStack:
    """Open files, innermost last. Each frame remembers the origin to restore on pop."""

    def __init__(self, max_depth: int):
        self.max_depth = max_depth
        self.frames: list[tuple[FileState, Optional[bytes]]] = []

    def __len__(self) -> int:
        return len(self.frames)

    @property
    def depth(self) -> int:
        """Nesting level of the current file; the main file is level 0."""
        return len(self.frames) - 1

    @property
    def top(self) -> FileState:
        return self.frames[-1][0]

    def push(self, state: FileState, saved_origin: Optional[bytes] = None) -> None:
        self.frames.append((state, saved_origin))

    def check_include(self, path: str) -> Optional[tuple[ErrorKind, str]]:
        if self.depth >= self.max_depth:
            return ErrorKind.LIMIT_EXCEEDED, f"include depth exceeds {self.max_depth}"
        real = os.path.realpath(path)
        for state, _ in self.frames:
            if state.path is not None and os.path.realpath(state.path) == real:
                return ErrorKind.SEMANTIC, f"include cycle through {path}"
        return None

    def pop(self) -> Optional[bytes]:
        state, saved = self.frames.pop()
        state.close()
        return saved

    def close(self) -> None:
        while self.frames:
            self.pop()
