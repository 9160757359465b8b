"""Command-line surface for the toolkit.

Subcommands wrap the library one-to-one and emit machine-readable output
(JSON on stdout, or the sweep CSV):

    solve             analytic mean delay at one operating point
    sweep             load grid -> CSV, optionally with simulation columns
    simulate          run the clocked batch-service simulator
    batch-experiment  single-blob vs blob-saturating BTXs at equal load
    stats             blob-usage statistics from a block CSV or JSON-RPC
    fetch             download per-block blob counts to a block CSV

Load may be given as --lambda or --rho (converted via lambda = rho*B/tau).
Exit codes: 0 success, 2 unstable load, 64 usage error, 1 other failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import blobstats
from .analytic import solve_delay, sweep_load
from .errors import BlobQueueError, UnstableLoadError
from .simulate import SimConfig, effective_batch_experiment, simulate

EX_OK = 0
EX_FAILURE = 1
EX_UNSTABLE = 2
EX_USAGE = 64

DEFAULT_TAU = 12.0
DEFAULT_B = 6

RPC_ENV_VAR = "BLOBQUEUE_RPC_URL"

SWEEP_HEADER = (
    "B,tau,rho,lambda,N_analytic,T_analytic,T_sim_mean,T_sim_ci_low,T_sim_ci_high,status"
)


class _Parser(argparse.ArgumentParser):
    """argparse with the conventional usage-error exit code."""

    def error(self, message: str) -> None:  # noqa: A003 - argparse API
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


def _fmt9(x: float | None) -> str:
    return "" if x is None else format(x, ".9g")


def _parse_rho_grid(text: str) -> list[float]:
    """Grid syntax: a single value, a comma list, or start:stop:step
    (inclusive of both ends when the step divides the range)."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError("grid must be start:stop:step")
        start, stop, step = (float(p) for p in parts)
        if step <= 0 or stop < start:
            raise ValueError("grid requires stop >= start and step > 0")
        count = int(round((stop - start) / step))
        grid = [round(start + i * step, 12) for i in range(count + 1)]
        grid = [g for g in grid if g <= stop + 1e-12]
    else:
        grid = [float(p) for p in text.split(",") if p]
    if not grid:
        raise ValueError("empty load grid")
    for g in grid:
        if not (0.0 < g < 1.0):
            raise ValueError(f"every rho must be in (0, 1), got {g}")
    return grid


def _parse_blob_size_dist(text: str, B: int) -> tuple[float, ...]:
    """Parse 'size:prob,size:prob,...' into the per-size probability tuple."""
    probs = [0.0] * B
    for item in text.split(","):
        size_s, _, prob_s = item.partition(":")
        size, prob = int(size_s), float(prob_s)
        if not (1 <= size <= B):
            raise ValueError(f"blob size {size} outside [1, {B}]")
        probs[size - 1] = prob
    while len(probs) > 1 and probs[-1] == 0.0:
        probs.pop()
    return tuple(probs)


def _resolve_lambda(parser: _Parser, args: argparse.Namespace) -> float:
    if (args.lam is None) == (args.rho is None):
        parser.error("exactly one of --lambda and --rho is required")
    if args.rho is not None:
        if not (0.0 < args.rho < 1.0):
            parser.error(f"--rho must be in (0, 1), got {args.rho}")
        return args.rho * args.B / args.tau
    if args.lam <= 0:
        parser.error(f"--lambda must be > 0, got {args.lam}")
    return args.lam


def _print_json(obj: dict) -> None:
    print(json.dumps(obj, indent=2))


def _add_load_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="BTX arrival rate (1/second)")
    p.add_argument("--rho", type=float, default=None,
                   help="offered load per blob slot; lambda = rho*B/tau")
    p.add_argument("--tau", type=float, default=DEFAULT_TAU, help="block interval, seconds")
    p.add_argument("--B", dest="B", type=int, default=DEFAULT_B, help="blob capacity per block")


def _add_sim_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--blocks", type=int, default=200_000, help="horizon in blocks")
    p.add_argument("--warmup", type=int, default=None, help="warmup blocks (default 10%%)")
    p.add_argument("--replications", type=int, default=10)
    p.add_argument("--seed", type=int, default=42)


def build_parser() -> _Parser:
    parser = _Parser(prog="blobqueue", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="analytic delay at one operating point")
    _add_load_args(p_solve)

    p_sweep = sub.add_parser("sweep", help="load sweep to CSV")
    p_sweep.add_argument("--B", dest="B_list", default=str(DEFAULT_B),
                         help="comma-separated blob capacities, e.g. 3,6,16")
    p_sweep.add_argument("--tau", type=float, default=DEFAULT_TAU)
    p_sweep.add_argument("--rho", required=True,
                         help="grid: start:stop:step, a comma list, or one value")
    p_sweep.add_argument("--out", type=Path, default=None, help="CSV path (default stdout)")
    p_sweep.add_argument("--with-sim", action="store_true",
                         help="fill the simulation columns")
    _add_sim_args(p_sweep)

    p_sim = sub.add_parser("simulate", help="run the batch-service simulator")
    _add_load_args(p_sim)
    _add_sim_args(p_sim)
    p_sim.add_argument("--blob-size-dist", default=None,
                       help="per-BTX blob counts, e.g. 1:0.7,3:0.3 (default all 1)")
    p_sim.add_argument("--packing-policy", choices=["fifo-blocking", "first-fit"],
                       default="fifo-blocking")

    p_batch = sub.add_parser("batch-experiment",
                             help="single-blob vs blob-saturating BTXs at equal load")
    _add_load_args(p_batch)
    _add_sim_args(p_batch)

    p_stats = sub.add_parser("stats", help="blob-usage statistics")
    p_stats.add_argument("--input", type=Path, default=None, help="block CSV path")
    p_stats.add_argument("--rpc", default=None,
                         help=f"JSON-RPC endpoint (or ${RPC_ENV_VAR})")
    p_stats.add_argument("--from", dest="from_block", type=int, default=None)
    p_stats.add_argument("--to", dest="to_block", type=int, default=None)
    p_stats.add_argument("--max-blobs", type=int, default=blobstats.DEFAULT_MAX_BLOBS)

    p_fetch = sub.add_parser("fetch", help="download per-block blob counts to CSV")
    p_fetch.add_argument("--rpc", default=None,
                         help=f"JSON-RPC endpoint (or ${RPC_ENV_VAR})")
    p_fetch.add_argument("--from", dest="from_block", type=int, required=True)
    p_fetch.add_argument("--to", dest="to_block", type=int, required=True)
    p_fetch.add_argument("--out", type=Path, required=True)
    p_fetch.add_argument("--checkpoint", type=Path, default=None,
                         help="checkpoint file (default <out>.ckpt)")
    p_fetch.add_argument("--max-in-flight", type=int, default=8)
    p_fetch.add_argument("--retries", type=int, default=5)
    p_fetch.add_argument("--backoff", type=float, default=0.5)
    p_fetch.add_argument("--timeout", type=float, default=30.0)
    p_fetch.add_argument("--max-blobs", type=int, default=blobstats.DEFAULT_MAX_BLOBS)
    return parser


def _row_seed(seed: int, b_index: int, rho_index: int) -> int:
    ss = np.random.SeedSequence(entropy=(seed, b_index, rho_index))
    return int(ss.generate_state(1, np.uint64)[0])


def _cmd_solve(parser: _Parser, args: argparse.Namespace) -> int:
    lam = _resolve_lambda(parser, args)
    m = solve_delay(lam, args.tau, args.B)
    _print_json({"lambda": lam, "tau": args.tau, "B": args.B, **m.to_json_dict()})
    return EX_OK


def _cmd_sweep(parser: _Parser, args: argparse.Namespace) -> int:
    try:
        grid = _parse_rho_grid(args.rho)
        b_values = [int(b) for b in args.B_list.split(",") if b]
    except ValueError as exc:
        parser.error(str(exc))
    if not b_values:
        parser.error("--B must list at least one capacity")

    lines = [SWEEP_HEADER]
    any_ok = False
    for bi, B in enumerate(b_values):
        rows = sweep_load(B, args.tau, grid)
        for ri, row in enumerate(rows):
            sim_mean = sim_lo = sim_hi = None
            if args.with_sim and row.status == "ok":
                cfg = SimConfig(
                    lam=row.lam,
                    tau=args.tau,
                    B=B,
                    horizon_blocks=args.blocks,
                    warmup_blocks=args.warmup,
                    seed=_row_seed(args.seed, bi, ri),
                    replications=args.replications,
                )
                res = simulate(cfg)
                sim_mean, (sim_lo, sim_hi) = res.mean_sojourn, res.ci95
            any_ok = any_ok or row.status == "ok"
            lines.append(
                ",".join(
                    [
                        str(B),
                        _fmt9(args.tau),
                        _fmt9(row.rho),
                        _fmt9(row.lam),
                        _fmt9(row.N),
                        _fmt9(row.T),
                        _fmt9(sim_mean),
                        _fmt9(sim_lo),
                        _fmt9(sim_hi),
                        row.status,
                    ]
                )
            )
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text, encoding="utf-8", newline="\n")
    return EX_OK if any_ok else EX_FAILURE


def _cmd_simulate(parser: _Parser, args: argparse.Namespace) -> int:
    lam = _resolve_lambda(parser, args)
    dist = None
    if args.blob_size_dist is not None:
        try:
            dist = _parse_blob_size_dist(args.blob_size_dist, args.B)
        except ValueError as exc:
            parser.error(str(exc))
    cfg = SimConfig(
        lam=lam,
        tau=args.tau,
        B=args.B,
        blob_size_dist=dist,
        horizon_blocks=args.blocks,
        warmup_blocks=args.warmup,
        seed=args.seed,
        replications=args.replications,
        packing_policy=args.packing_policy,
    )
    res = simulate(cfg)
    _print_json({"lambda": lam, "tau": args.tau, "B": args.B, **res.to_json_dict()})
    return EX_OK


def _cmd_batch_experiment(parser: _Parser, args: argparse.Namespace) -> int:
    lam = _resolve_lambda(parser, args)
    res = effective_batch_experiment(
        lam,
        args.tau,
        args.B,
        horizon_blocks=args.blocks,
        warmup_blocks=args.warmup,
        seed=args.seed,
        replications=args.replications,
    )
    _print_json(
        {
            "rho": res.rho,
            "lambda": res.lam,
            "tau": res.tau,
            "B": res.B,
            "single_blob": {
                "mean_sojourn": res.single_blob.mean_sojourn,
                "ci95": list(res.single_blob.ci95),
            },
            "full_batch": {
                "mean_sojourn": res.full_batch.mean_sojourn,
                "ci95": list(res.full_batch.ci95),
            },
            "analytic_full_batch_T": res.analytic_full_batch.T,
        }
    )
    return EX_OK


def _resolve_rpc(parser: _Parser, args: argparse.Namespace) -> str:
    endpoint = args.rpc or os.environ.get(RPC_ENV_VAR)
    if not endpoint:
        parser.error(f"an RPC endpoint is required (--rpc or ${RPC_ENV_VAR})")
    return endpoint


def _cmd_stats(parser: _Parser, args: argparse.Namespace) -> int:
    if args.input is not None:
        records = blobstats.parse_block_file(args.input, max_blobs=args.max_blobs)
    else:
        if args.from_block is None or args.to_block is None:
            parser.error("either --input or --rpc with --from/--to is required")
        endpoint = _resolve_rpc(parser, args)
        records = blobstats.fetch_blocks(
            endpoint, args.from_block, args.to_block, max_blobs=args.max_blobs
        )
    stats = blobstats.compute_usage_stats(records, max_blobs=args.max_blobs)
    _print_json(stats.to_json_dict())
    return EX_OK


def _cmd_fetch(parser: _Parser, args: argparse.Namespace) -> int:
    endpoint = _resolve_rpc(parser, args)
    ckpt = args.checkpoint if args.checkpoint is not None else args.out.with_suffix(
        args.out.suffix + ".ckpt"
    )
    resuming = ckpt.exists() and args.out.exists()
    wrote_header = resuming

    def sink(batch: list[blobstats.BlockRecord]) -> None:
        nonlocal wrote_header
        blobstats.write_block_file(batch, args.out, append=wrote_header)
        wrote_header = True

    blobstats.fetch_blocks(
        endpoint,
        args.from_block,
        args.to_block,
        max_blobs=args.max_blobs,
        max_in_flight=args.max_in_flight,
        retries=args.retries,
        backoff=args.backoff,
        timeout=args.timeout,
        checkpoint_path=ckpt,
        sink=sink,
    )
    return EX_OK


_COMMANDS = {
    "solve": _cmd_solve,
    "sweep": _cmd_sweep,
    "simulate": _cmd_simulate,
    "batch-experiment": _cmd_batch_experiment,
    "stats": _cmd_stats,
    "fetch": _cmd_fetch,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](parser, args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except UnstableLoadError as exc:
        print(json.dumps({"error": "unstable-load", "rho": exc.rho, "message": str(exc)}),
              file=sys.stderr)
        return EX_UNSTABLE
    except (BlobQueueError, OSError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return EX_FAILURE


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
