"""Regenerate the committed lookup constants.

Rewrites the nibble classification tables and the RRTYPE hash multiplier in
place, then re-checks that the hash is injective over the registry.

    python tools/gen_tables.py
"""

from __future__ import annotations

import re
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from zonefast.indexer.tables import BLANK_MEMBERS, SPECIAL_MEMBERS, build_nibble_table  # noqa: E402
from zonefast.registry import RRTYPES  # noqa: E402
from zonefast.typehash import find_multiplier, slots  # noqa: E402

SEED = 2024


def _replace_block(path: Path, body: str) -> None:
    text = path.read_text()
    new = re.sub(
        r"# BEGIN GENERATED\n.*?# END GENERATED\n",
        "# BEGIN GENERATED\n" + body + "# END GENERATED\n",
        text,
        flags=re.S,
    )
    path.write_text(new)


def main() -> None:
    blank = build_nibble_table(BLANK_MEMBERS)
    special = build_nibble_table(SPECIAL_MEMBERS)
    _replace_block(
        ROOT / "src/zonefast/indexer/tables.py",
        f'BLANK_TABLE = bytes.fromhex("{blank.hex()}")\n'
        f'SPECIAL_TABLE = bytes.fromhex("{special.hex()}")\n',
    )
    mnemonics = [name.encode() for name, _ in RRTYPES]
    multiplier = find_multiplier(mnemonics, seed=SEED)
    assert len(set(slots(mnemonics, multiplier))) == len(mnemonics) == 67
    _replace_block(
        ROOT / "src/zonefast/typehash.py",
        f"HASH_MULTIPLIER = {multiplier:#018x}\nHASH_SEED = {SEED}\n",
    )
    print(f"{len(mnemonics)} mnemonics, multiplier {multiplier:#018x}")


if __name__ == "__main__":
    main()
