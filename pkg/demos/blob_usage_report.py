#!/usr/bin/env python3
"""Blob-usage statistics and what they imply for queueing delay.

Reads the bundled synthetic block file (built to match observed mainnet
aggregates), prints the usage breakdown, and feeds the implied load into
the analytic model.
"""

from blobqueue import (
    bundled_fixture_path,
    compute_usage_stats,
    implied_load,
    parse_block_file,
    solve_delay,
)

TAU, B = 12.0, 6

records = parse_block_file(bundled_fixture_path())
stats = compute_usage_stats(records)

print(f"blocks analyzed:        {stats.blocks_total}")
print(f"empty-block fraction:   {stats.blocks_empty_fraction:.2%}")
print(f"BTXs per block:         {stats.btx_per_block:.3f}")
print(f"blobs per BTX:          {stats.mean_blobs_per_btx:.3f}")
print(f"blobs per block:        {stats.blobs_per_block:.3f}")
print("share of BTXs by blob count:")
for blobs, share in enumerate(stats.blob_share, start=1):
    print(f"   {blobs} blob(s): {share:6.2f}%")

rho_blobs, lam_btx = implied_load(stats, B, TAU)
print(f"\nimplied blob-slot load (all blobs posted singly): rho = {rho_blobs:.3f}")
print(f"observed BTX rate: {lam_btx:.5f} per second")

m = solve_delay(rho_blobs * B / TAU, TAU, B)
print(f"\nat that load the model gives T = {m.T:.3f} s (N = {m.N:.3f} BTX):")
print("delay is still close to the empty-system floor of tau/2 = 6 s,")
print("so today's demand leaves plenty of room before queueing kicks in.")
