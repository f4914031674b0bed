"""Throughput measurement over an in-memory zone."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Optional

from .grammar import ZoneParser
from .lexer import MAX_WINDOW
from .model import ParserOptions

REPORT_VERSION = 1


@dataclass
class BenchReport:
    bytes_processed: int
    records: int
    kernel: str
    times: list = field(default_factory=list)
    read_baseline_gbps: float = 0.0
    errors: int = 0

    @property
    def runs(self) -> int:
        return len(self.times)

    @property
    def min_time(self) -> float:
        return min(self.times)

    @property
    def mean_time(self) -> float:
        return sum(self.times) / len(self.times)

    @property
    def throughput_gbps(self) -> float:
        return self.bytes_processed / self.min_time / 1e9

    def as_dict(self) -> dict:
        out = asdict(self)
        out.update(
            report_version=REPORT_VERSION,
            runs=self.runs,
            min_time=self.min_time,
            mean_time=self.mean_time,
            throughput_gbps=self.throughput_gbps,
        )
        return out

    def summary(self) -> str:
        return (
            f"kernel {self.kernel}: {self.records} records, {self.bytes_processed} bytes, "
            f"{self.runs} runs, min {self.min_time:.4f} s, mean {self.mean_time:.4f} s, "
            f"{self.throughput_gbps:.4f} GB/s (memory read baseline {self.read_baseline_gbps:.2f} GB/s)"
        )


def read_baseline(data: bytes, runs: int = 3) -> float:
    """GB/s of a plain pass over every byte of ``data``."""
    best = float("inf")
    for _ in range(runs):
        start = time.perf_counter()
        data.count(b"\n")
        best = min(best, time.perf_counter() - start)
    return len(data) / max(best, 1e-9) / 1e9


def run_bench(
    data: bytes,
    runs: int = 5,
    kernel: Optional[str] = None,
    options: Optional[ParserOptions] = None,
    max_window: int = MAX_WINDOW,
) -> BenchReport:
    """One untimed warmup parse, then ``runs`` timed parses counting records."""
    if runs < 1:
        raise ValueError("runs must be at least 1")
    parser = ZoneParser(options, kernel, max_window)
    warm = parser.parse(data)
    report = BenchReport(len(data), warm.records, parser.kernel.name, errors=len(warm.errors))
    for _ in range(runs):
        start = time.perf_counter()
        parser.parse(data)
        report.times.append(time.perf_counter() - start)
    report.read_baseline_gbps = read_baseline(data)
    return report
