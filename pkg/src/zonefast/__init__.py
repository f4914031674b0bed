"""zonefast: a two-stage DNS zone-file parser with vectorized structural indexing."""

from __future__ import annotations

from .bench import BenchReport, run_bench
from .codecs import CodecError, base16_decode, base32hex_decode, base64_decode
from .grammar import ParseContext, ParseResult, ZoneParser, parse, parse_records
from .indexer import KERNEL_ENV, KERNEL_NAMES, available_kernels, get_kernel
from .model import (
    ErrorKind,
    ParseError,
    ParserOptions,
    ZoneRecord,
    format_error,
    name_to_text,
    record_to_generic_text,
)
from .oracle import OracleRecordList, oracle_parse, oracle_parse_file
from .zonegen import generate_bytes, write_zone

__version__ = "0.1.0"

__all__ = [
    "BenchReport",
    "CodecError",
    "ErrorKind",
    "KERNEL_ENV",
    "KERNEL_NAMES",
    "OracleRecordList",
    "ParseContext",
    "ParseError",
    "ParseResult",
    "ParserOptions",
    "ZoneParser",
    "ZoneRecord",
    "available_kernels",
    "base16_decode",
    "base32hex_decode",
    "base64_decode",
    "format_error",
    "generate_bytes",
    "get_kernel",
    "name_to_text",
    "oracle_parse",
    "oracle_parse_file",
    "parse",
    "parse_records",
    "record_to_generic_text",
    "run_bench",
    "write_zone",
]
