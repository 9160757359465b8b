#!/usr/bin/env python3
"""Regenerate the bundled synthetic block fixture.

Builds 10,000 blocks whose aggregates match published mainnet blob-usage
statistics for mid-2024: 34% empty blocks, 1.33 BTXs per block, per-BTX
blob-count shares of (71.73, 3.16, 9.49, 0.14, 11.71, 3.77)%, hence
~1.88 blobs per BTX and ~2.50 blobs per block.  The arrangement of BTXs
across blocks is randomized with a fixed seed; only the aggregates are
meaningful.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

BLOCKS = 10_000
EMPTY_BLOCKS = 3_400
TOTAL_BTX = 13_300
# Counts of BTXs carrying 1..6 blobs; shares match the published mix and
# they sum to TOTAL_BTX exactly.
SIZE_COUNTS = {1: 9_541, 2: 420, 3: 1_262, 4: 19, 5: 1_557, 6: 501}
FIRST_BLOCK = 20_000_000
SEED = 20_240_601


def main(out_path: Path) -> None:
    assert sum(SIZE_COUNTS.values()) == TOTAL_BTX
    rng = np.random.default_rng(SEED)

    nonempty = BLOCKS - EMPTY_BLOCKS
    btx_per_block = np.ones(nonempty, dtype=np.int64)
    extra = rng.integers(0, nonempty, size=TOTAL_BTX - nonempty)
    np.add.at(btx_per_block, extra, 1)

    sizes = np.repeat(
        list(SIZE_COUNTS.keys()), list(SIZE_COUNTS.values())
    )
    sizes = rng.permutation(sizes)

    is_empty = np.zeros(BLOCKS, dtype=bool)
    is_empty[:EMPTY_BLOCKS] = True
    is_empty = rng.permutation(is_empty)

    lines = ["block_number,blob_counts"]
    cursor = 0
    block_idx = 0
    for offset in range(BLOCKS):
        number = FIRST_BLOCK + offset
        if is_empty[offset]:
            lines.append(f"{number},")
            continue
        count = int(btx_per_block[block_idx])
        block_idx += 1
        blobs = sizes[cursor : cursor + count]
        cursor += count
        lines.append(f"{number}," + ";".join(str(int(s)) for s in blobs))
    assert cursor == TOTAL_BTX and block_idx == nonempty

    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {BLOCKS} blocks to {out_path}")


if __name__ == "__main__":
    default = Path(__file__).resolve().parent.parent / "src/blobqueue/data/blob_usage_fixture.csv"
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else default)
