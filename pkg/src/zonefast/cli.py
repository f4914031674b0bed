"""Command-line tools: zone-count, zone-dump, zone-bench and zone-gen."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .bench import run_bench
from .grammar import ZoneParser
from .indexer import KERNEL_ENV, KERNEL_NAMES
from .lexer import MAX_WINDOW
from .model import ErrorKind, ParserOptions, ZoneRecord, format_error, record_to_generic_text
from .oracle import oracle_parse, oracle_parse_file
from .rdata import FieldError, parse_name
from .zonegen import PROFILES, write_zone

EXIT_OK = 0
EXIT_PARSE_ERROR = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _window(text: str) -> int:
    value = int(text)
    if value < 64 or value % 64:
        raise argparse.ArgumentTypeError("must be a positive multiple of 64")
    return value


def _parser_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("file", help="zone file, or - for standard input")
    parser.add_argument("--kernel", choices=KERNEL_NAMES, help=f"indexing kernel (default: ${KERNEL_ENV} or auto)")
    parser.add_argument("--default-ttl", type=int, default=None, help="TTL for records before any TTL is known")
    parser.add_argument("--origin", help="initial origin, an absolute name")
    parser.add_argument("--max-window", type=_window, default=MAX_WINDOW, help="largest indexing window in bytes")


def _options(args: argparse.Namespace) -> ParserOptions:
    kwargs = {}
    if args.default_ttl is not None:
        kwargs["default_ttl"] = args.default_ttl
    if args.origin:
        try:
            kwargs["origin"] = parse_name(args.origin.encode(), None)
        except FieldError as exc:
            raise UsageError(f"--origin: {exc.message}") from None
    try:
        return ParserOptions(**kwargs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _fatal_io(errors: list, path: str) -> bool:
    """True when the main file itself could not be read."""
    return bool(errors) and errors[0].kind == ErrorKind.IO and errors[0].file == path


def _run(fn, argv) -> int:
    try:
        return fn(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


def _count(argv: Optional[Sequence[str]]) -> int:
    ap = argparse.ArgumentParser(prog="zone-count", description="Count the records in a zone file.")
    _parser_args(ap)
    args = ap.parse_args(argv)
    try:
        parser = ZoneParser(_options(args), args.kernel, args.max_window)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    result = parser.parse(args.file)
    if _fatal_io(result.errors, args.file):
        print(format_error(result.errors[0]), file=sys.stderr)
        return EXIT_USAGE
    print(f"{result.records} records")
    if result.errors:
        print(format_error(result.errors[0]), file=sys.stderr)
        if len(result.errors) > 1:
            print(f"({len(result.errors) - 1} more errors)", file=sys.stderr)
        return EXIT_PARSE_ERROR
    return EXIT_OK


def _dump(argv: Optional[Sequence[str]]) -> int:
    ap = argparse.ArgumentParser(prog="zone-dump", description="Print every record in generic notation.")
    _parser_args(ap)
    ap.add_argument("--oracle", action="store_true", help="use the reference parser instead of the fast path")
    args = ap.parse_args(argv)
    options = _options(args)
    out = sys.stdout
    if args.oracle:
        if args.file == "-":
            listing = oracle_parse(sys.stdin.buffer.read(), options, name="-")
        else:
            listing = oracle_parse_file(args.file, options)
        records, errors = listing.records, listing.errors
        if not _fatal_io(errors, args.file):
            out.writelines(record_to_generic_text(r) + "\n" for r in records)
    else:
        def emit(owner, rtype, rclass, ttl, rdata):
            out.write(record_to_generic_text(ZoneRecord(owner, rtype, rclass, ttl, rdata)) + "\n")

        try:
            parser = ZoneParser(options, args.kernel, args.max_window)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        errors = parser.parse(args.file, emit).errors
    out.flush()
    for error in errors:
        print(format_error(error), file=sys.stderr)
    if _fatal_io(errors, args.file):
        return EXIT_USAGE
    return EXIT_PARSE_ERROR if errors else EXIT_OK


def _bench(argv: Optional[Sequence[str]]) -> int:
    ap = argparse.ArgumentParser(prog="zone-bench", description="Measure parsing throughput on an in-memory zone.")
    ap.add_argument("file")
    ap.add_argument("--runs", type=int, default=5, help="timed runs after one warmup (default: 5)")
    ap.add_argument("--kernel", choices=KERNEL_NAMES)
    ap.add_argument("--max-window", type=_window, default=MAX_WINDOW)
    ap.add_argument("--json", action="store_true", help="print a machine-readable report")
    args = ap.parse_args(argv)
    if args.runs < 1:
        raise UsageError("--runs must be at least 1")
    try:
        with open(args.file, "rb") as handle:
            data = handle.read()
    except OSError as exc:
        print(f"{args.file}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_USAGE
    report = run_bench(data, args.runs, args.kernel, max_window=args.max_window)
    if args.json:
        print(json.dumps(report.as_dict(), sort_keys=True))
    else:
        print(report.summary())
    return EXIT_OK


def _gen(argv: Optional[Sequence[str]]) -> int:
    ap = argparse.ArgumentParser(prog="zone-gen", description="Write a deterministic synthetic zone to standard output.")
    ap.add_argument("--records", type=int, required=True)
    ap.add_argument("--profile", choices=sorted(PROFILES), default="com")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if args.records < 1:
        raise UsageError("--records must be at least 1")
    write_zone(sys.stdout, args.records, args.profile, args.seed)
    sys.stdout.flush()
    return EXIT_OK


def zone_count(argv: Optional[Sequence[str]] = None) -> int:
    return _run(_count, argv)


def zone_dump(argv: Optional[Sequence[str]] = None) -> int:
    return _run(_dump, argv)


def zone_bench(argv: Optional[Sequence[str]] = None) -> int:
    return _run(_bench, argv)


def zone_gen(argv: Optional[Sequence[str]] = None) -> int:
    return _run(_gen, argv)


COMMANDS = {"count": zone_count, "dump": zone_dump, "bench": zone_bench, "gen": zone_gen}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in COMMANDS:
        print(f"usage: python -m zonefast {{{','.join(COMMANDS)}}} ...", file=sys.stderr)
        return EXIT_USAGE
    return COMMANDS[argv[0]](argv[1:])


if __name__ == "__main__":
    sys.exit(main())
