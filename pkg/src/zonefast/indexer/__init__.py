"""Stage 1: structural indexing of 64-byte blocks into field/delimiter tapes."""

from __future__ import annotations

import functools
import os
from typing import Optional, Union

from .blocks import (
    BLOCK,
    BlockMasks,
    IndexerCarry,
    IndexTape,
    ZERO_CARRY,
    compute_quoted_mask,
    derive_structure,
    prefix_xor,
    resolve_comments,
)
from .scalar import ScalarKernel, classify_block, find_any_8x64
from .tables import BLANK_TABLE, SPECIAL_TABLE
from .vector import VectorKernel

Kernel = Union[ScalarKernel, VectorKernel]

KERNEL_ENV = "ZONEFAST_KERNEL"
KERNEL_NAMES = ("auto", "scalar", "v128", "v256")

__all__ = [
    "BLOCK",
    "BLANK_TABLE",
    "SPECIAL_TABLE",
    "BlockMasks",
    "IndexerCarry",
    "IndexTape",
    "KERNEL_NAMES",
    "Kernel",
    "ScalarKernel",
    "VectorKernel",
    "ZERO_CARRY",
    "available_kernels",
    "classify_block",
    "compute_quoted_mask",
    "derive_structure",
    "find_any_8x64",
    "get_kernel",
    "prefix_xor",
    "resolve_comments",
]


@functools.lru_cache(maxsize=None)
def _cpu_flags() -> frozenset[str]:
    try:
        with open("/proc/cpuinfo") as fh:
            for line in fh:
                if line.startswith("flags"):
                    return frozenset(line.split(":", 1)[1].split())
    except OSError:
        pass
    return frozenset()


def best_kernel_name() -> str:
    flags = _cpu_flags()
    if "avx2" in flags:
        return "v256"
    if "ssse3" in flags:
        return "v128"
    if not flags:
        # non-x64 host: the numpy kernels stand in for a portable vector build
        return "v256"
    return "scalar"


@functools.lru_cache(maxsize=None)
def _make(name: str) -> Kernel:
    if name == "scalar":
        return ScalarKernel()
    if name == "v128":
        return VectorKernel("v128", 16)
    if name == "v256":
        return VectorKernel("v256", 32)
    raise ValueError(f"unknown kernel {name!r}; expected one of {', '.join(KERNEL_NAMES)}")


def get_kernel(name: Optional[str] = None) -> Kernel:
    """Resolve a kernel by name, falling back to $ZONEFAST_KERNEL, then auto."""
    if name is None:
        name = os.environ.get(KERNEL_ENV, "auto") or "auto"
    name = name.lower()
    if name == "auto":
        name = best_kernel_name()
    return _make(name)


def available_kernels() -> list[str]:
    return ["scalar", "v128", "v256"]
