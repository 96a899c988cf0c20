"""Command-line front end: one shot, CSV in, image out.

Exit codes: 0 success, 1 usage or input error.
"""

from __future__ import annotations

import argparse
import sys

from .figure import X_COLUMNS, PlotSpec, render

EXIT_OK = 0
EXIT_USAGE = 1


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage by default; our contract says 1.
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="plotview",
        description="Render a sweep CSV: mean sum-rate per algorithm, "
        "standard-error bars.",
    )
    parser.add_argument("--csv", required=True, help="sweep CSV to read")
    parser.add_argument(
        "--x",
        required=True,
        choices=X_COLUMNS,
        dest="x_axis",
        help="column to put on the x axis",
    )
    parser.add_argument(
        "--filter",
        action="append",
        default=[],
        metavar="K=V",
        help="keep only rows where column K equals V (repeatable)",
    )
    parser.add_argument("--out", required=True, help="image file to write")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse exits itself on bad usage / --help
        return int(e.code or 0)

    filters = []
    for item in args.filter:
        key, sep, value = item.partition("=")
        if not sep or not key:
            print(f"error: --filter expects K=V, got {item!r}", file=sys.stderr)
            return EXIT_USAGE
        filters.append((key, value))

    try:
        series = render(
            PlotSpec(
                csv_path=args.csv,
                x_axis=args.x_axis,
                out_path=args.out,
                filters=tuple(filters),
            )
        )
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    for s in series:
        print(f"{s.label}: {len(s.x)} x-points from {sum(s.n)} rows")
    print(f"wrote {args.out}")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
