"""Blob-usage statistics from Ethereum block data.

Works from offline CSV block files or straight from an execution-layer
JSON-RPC endpoint.  A blob-carrying transaction (BTX) is a type-0x3
transaction; its blob count is the length of its blobVersionedHashes
list.  Mainnet currently allows at most 6 blobs per block, so that is
the default cap everywhere; pass ``max_blobs`` to analyze other regimes.

Block CSV schema (UTF-8, strict): header ``block_number,blob_counts``,
one row per block, blob_counts a ``;``-separated list of per-BTX blob
counts, empty for blocks without BTXs.  Example row: ``19993250,1;1;5``.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Sequence

import requests

from .errors import (
    DuplicateBlockError,
    InvalidParameterError,
    NetworkError,
    ParseError,
    RangeError,
    RpcError,
)

__all__ = [
    "DEFAULT_MAX_BLOBS",
    "BlockRecord",
    "BlobUsageStats",
    "parse_block_file",
    "write_block_file",
    "fetch_blocks",
    "compute_usage_stats",
    "implied_load",
    "bundled_fixture_path",
]

DEFAULT_MAX_BLOBS = 6

_CSV_HEADER = "block_number,blob_counts"


@dataclass(frozen=True)
class BlockRecord:
    """Per-BTX blob counts of one block; empty tuple means no BTXs."""

    block_number: int
    blob_counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.block_number < 0:
            raise InvalidParameterError(f"negative block number {self.block_number}")
        for c in self.blob_counts:
            if c < 1:
                raise InvalidParameterError(
                    f"block {self.block_number}: blob count must be >= 1, got {c}"
                )


@dataclass(frozen=True)
class BlobUsageStats:
    """Aggregated blob usage over a set of blocks.

    ``blob_share`` holds the percentage of BTXs using 1..max_blobs blobs.
    When the input contains no BTXs at all, the per-BTX fields are None.
    """

    blocks_total: int
    blocks_empty_fraction: float
    btx_per_block: float
    blob_share: tuple[float, ...] | None
    mean_blobs_per_btx: float | None
    blobs_per_block: float

    def to_json_dict(self) -> dict:
        return {
            "blocks_total": self.blocks_total,
            "blocks_empty_fraction": self.blocks_empty_fraction,
            "btx_per_block": self.btx_per_block,
            "blob_share": list(self.blob_share) if self.blob_share is not None else None,
            "mean_blobs_per_btx": self.mean_blobs_per_btx,
            "blobs_per_block": self.blobs_per_block,
        }


def bundled_fixture_path() -> Path:
    """Path of the bundled synthetic block file used by tests and demos."""
    return Path(resources.files("blobqueue").joinpath("data/blob_usage_fixture.csv"))


def _check_count(count: int, max_blobs: int, where: str) -> None:
    if not (1 <= count <= max_blobs):
        raise InvalidParameterError(
            f"{where}: blob count {count} outside [1, {max_blobs}]"
        )


def parse_block_file(path: str | Path, *, max_blobs: int = DEFAULT_MAX_BLOBS) -> list[BlockRecord]:
    """Parse a block CSV file, failing fast on the first malformed row."""
    path = Path(path)
    records: list[BlockRecord] = []
    seen: set[int] = set()
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").rstrip("\r")
        if header != _CSV_HEADER:
            raise ParseError(
                f"expected header {_CSV_HEADER!r}, got {header!r}", path=str(path), line=1
            )
        for lineno, raw in enumerate(fh, start=2):
            line = raw.rstrip("\n").rstrip("\r")
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise ParseError(
                    f"expected 2 fields, got {len(parts)}", path=str(path), line=lineno
                )
            num_field, counts_field = parts
            try:
                number = int(num_field)
            except ValueError:
                raise ParseError(
                    f"bad block number {num_field!r}", path=str(path), line=lineno
                ) from None
            if number in seen:
                raise DuplicateBlockError(
                    f"duplicate block number {number}", path=str(path), line=lineno
                )
            seen.add(number)
            counts: tuple[int, ...] = ()
            if counts_field:
                items = counts_field.split(";")
                try:
                    counts = tuple(int(item) for item in items)
                except ValueError:
                    raise ParseError(
                        f"bad blob count list {counts_field!r}", path=str(path), line=lineno
                    ) from None
                for c in counts:
                    if not (1 <= c <= max_blobs):
                        raise ParseError(
                            f"blob count {c} outside [1, {max_blobs}]",
                            path=str(path),
                            line=lineno,
                        )
            records.append(BlockRecord(block_number=number, blob_counts=counts))
    return records


def write_block_file(
    records: Iterable[BlockRecord], path: str | Path, *, append: bool = False
) -> None:
    """Write records in the block CSV schema (parse -> write -> parse is identity)."""
    path = Path(path)
    mode = "a" if append and path.exists() else "w"
    with open(path, mode, encoding="utf-8", newline="\n") as fh:
        if mode == "w":
            fh.write(_CSV_HEADER + "\n")
        for rec in records:
            counts = ";".join(str(c) for c in rec.blob_counts)
            fh.write(f"{rec.block_number},{counts}\n")


def _is_blob_tx(tx: dict) -> bool:
    tx_type = tx.get("type")
    if tx_type is None:
        return False
    try:
        return int(tx_type, 16) == 3 if isinstance(tx_type, str) else int(tx_type) == 3
    except (TypeError, ValueError):
        return False


def _record_from_rpc_block(number: int, block: dict, max_blobs: int) -> BlockRecord:
    counts = []
    for tx in block.get("transactions", []):
        if not isinstance(tx, dict) or not _is_blob_tx(tx):
            continue
        n = len(tx.get("blobVersionedHashes") or [])
        _check_count(n, max_blobs, f"block {number}")
        counts.append(n)
    return BlockRecord(block_number=number, blob_counts=tuple(counts))


def _rpc_get_block(
    session: requests.Session,
    endpoint: str,
    number: int,
    *,
    retries: int,
    backoff: float,
    timeout: float,
) -> dict:
    payload = {
        "jsonrpc": "2.0",
        "id": number,
        "method": "eth_getBlockByNumber",
        "params": [hex(number), True],
    }
    last_exc: Exception | None = None
    for attempt in range(retries):
        try:
            resp = session.post(endpoint, json=payload, timeout=timeout)
            if resp.status_code != 200:
                raise requests.HTTPError(f"HTTP {resp.status_code}")
            body = resp.json()
        except (requests.RequestException, ValueError) as exc:
            last_exc = exc
            if attempt < retries - 1:
                time.sleep(backoff * (2**attempt))
            continue
        if "error" in body:
            err = body["error"] or {}
            raise RpcError(
                f"block {number}: {err.get('message', 'rpc error')}",
                code=err.get("code"),
            )
        result = body.get("result")
        if result is None:
            raise RpcError(f"block {number}: null result")
        return result
    raise NetworkError(
        f"giving up on block {number} after {retries} attempts: {last_exc}"
    )


def fetch_blocks(
    endpoint: str,
    from_block: int,
    to_block: int,
    *,
    max_blobs: int = DEFAULT_MAX_BLOBS,
    max_in_flight: int = 8,
    retries: int = 5,
    backoff: float = 0.5,
    timeout: float = 30.0,
    checkpoint_path: str | Path | None = None,
    sink: Callable[[list[BlockRecord]], None] | None = None,
    session: requests.Session | None = None,
) -> list[BlockRecord]:
    """Fetch per-block blob counts over JSON-RPC, in block order.

    Requests run in bounded concurrent windows of ``max_in_flight``
    blocks with per-request retry and exponential backoff.  When a
    checkpoint path is given, the last completed block number is written
    after each window and already-checkpointed blocks are skipped on
    resume (only the blocks actually fetched this call are returned).
    ``sink`` is invoked once per completed window, in order, so callers
    can persist incrementally.
    """
    if from_block > to_block:
        raise RangeError(f"from_block {from_block} > to_block {to_block}")
    if max_in_flight < 1:
        raise InvalidParameterError("max_in_flight must be >= 1")

    start = from_block
    ckpt = Path(checkpoint_path) if checkpoint_path is not None else None
    if ckpt is not None and ckpt.exists():
        text = ckpt.read_text().strip()
        if text:
            start = max(start, int(text) + 1)

    own_session = session is None
    session = session or requests.Session()
    records: list[BlockRecord] = []
    try:
        with ThreadPoolExecutor(max_workers=max_in_flight) as pool:
            window = start
            while window <= to_block:
                numbers = range(window, min(window + max_in_flight, to_block + 1))
                futures = [
                    pool.submit(
                        _rpc_get_block,
                        session,
                        endpoint,
                        n,
                        retries=retries,
                        backoff=backoff,
                        timeout=timeout,
                    )
                    for n in numbers
                ]
                batch = [
                    _record_from_rpc_block(n, fut.result(), max_blobs)
                    for n, fut in zip(numbers, futures)
                ]
                records.extend(batch)
                if sink is not None:
                    sink(batch)
                if ckpt is not None:
                    ckpt.write_text(f"{numbers[-1]}\n")
                window = numbers[-1] + 1
    finally:
        if own_session:
            session.close()
    return records


def compute_usage_stats(
    records: Sequence[BlockRecord], *, max_blobs: int = DEFAULT_MAX_BLOBS
) -> BlobUsageStats:
    """Aggregate blob usage over blocks.

    Percentages are over BTXs; per-block rates are over all blocks,
    empty ones included.  Zero BTXs in total yields an explicit no-BTX
    result (share and per-BTX mean are None) rather than dividing by zero.
    """
    if not records:
        raise InvalidParameterError("no block records given")
    blocks = len(records)
    empty = 0
    hist = [0] * max_blobs
    total_btx = 0
    total_blobs = 0
    for rec in records:
        if not rec.blob_counts:
            empty += 1
            continue
        for c in rec.blob_counts:
            _check_count(c, max_blobs, f"block {rec.block_number}")
            hist[c - 1] += 1
            total_btx += 1
            total_blobs += c

    if total_btx == 0:
        return BlobUsageStats(
            blocks_total=blocks,
            blocks_empty_fraction=empty / blocks,
            btx_per_block=0.0,
            blob_share=None,
            mean_blobs_per_btx=None,
            blobs_per_block=0.0,
        )
    return BlobUsageStats(
        blocks_total=blocks,
        blocks_empty_fraction=empty / blocks,
        btx_per_block=total_btx / blocks,
        blob_share=tuple(100.0 * h / total_btx for h in hist),
        mean_blobs_per_btx=total_blobs / total_btx,
        blobs_per_block=total_blobs / blocks,
    )


def implied_load(stats: BlobUsageStats, B: int, tau: float) -> tuple[float, float]:
    """Offered load if every blob were posted singly, plus the BTX rate.

    Returns (rho_blobs, lambda_btx): blobs per block over capacity B, and
    BTXs per second given one block every tau seconds.
    """
    if B < 1:
        raise InvalidParameterError(f"B must be >= 1, got {B!r}")
    if not (math.isfinite(tau) and tau > 0):
        raise InvalidParameterError(f"tau must be finite and > 0, got {tau!r}")
    return stats.blobs_per_block / B, stats.btx_per_block / tau
