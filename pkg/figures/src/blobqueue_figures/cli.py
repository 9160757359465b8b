"""Script entry point: render one figure from sweep CSV files."""

from __future__ import annotations

import argparse
import sys

from .render import KINDS, FigureError, FigureSpec, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blobqueue-figures",
        description="Render delay figures from blobqueue sweep CSV files.",
    )
    parser.add_argument("--input", action="append", required=True,
                        help="sweep CSV path (repeatable)")
    parser.add_argument("--kind", choices=KINDS, required=True)
    parser.add_argument("--output", required=True, help="image path (png, pdf, svg, ...)")
    parser.add_argument("--log-delay", action="store_true",
                        help="log-scale the delay axis")
    parser.add_argument("--title", default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = FigureSpec(
        inputs=tuple(args.input),
        kind=args.kind,
        output=args.output,
        log_delay=args.log_delay,
        title=args.title,
    )
    try:
        fig = render(spec)
    except (FigureError, OSError) as exc:
        print(f"blobqueue-figures: error: {exc}", file=sys.stderr)
        return 1
    import matplotlib.pyplot as plt

    plt.close(fig)
    return 0


def entrypoint() -> None:
    raise SystemExit(main())
