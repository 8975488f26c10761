"""
Main Entry Point for svdc
Command-line interface: python src/main.py <command> ...

Exit codes: 0 ok, 2 usage / input / I-O failure, 3 numeric failure.
"""

import argparse
import sys
from typing import List, Optional

from cli.commands import (cmd_compress, cmd_decompress, cmd_metrics,
                          cmd_spectrum, cmd_sweep, cmd_table)
from config.settings import CODEC_CONFIG, LOG_CONFIG
from core.diagnostics import configure_logging
from core.exceptions import SvdcError

EXIT_OK = 0
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="svdc",
        description="SVD grayscale image compression with energy-ratio quality assessment"
    )
    parser.add_argument("--log-level", default=LOG_CONFIG["level"],
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        help="diagnostics on standard error")
    commands = parser.add_subparsers(dest="command", required=True)

    compress = commands.add_parser("compress", help="encode a PGM into an SVDC container")
    compress.add_argument("input")
    compress.add_argument("output")
    choice = compress.add_mutually_exclusive_group(required=True)
    choice.add_argument("--rank", type=int, help="retained rank k")
    choice.add_argument("--target-e", type=float, help="smallest k reaching this energy ratio")
    compress.add_argument("--precision", choices=["f32", "f64"], default=CODEC_CONFIG["default_precision"])

    decompress = commands.add_parser("decompress", help="decode an SVDC container to a PGM")
    decompress.add_argument("input")
    decompress.add_argument("output")

    metrics = commands.add_parser("metrics", help="compare an image with a PGM or SVDC container")
    metrics.add_argument("original")
    metrics.add_argument("other")
    metrics.add_argument("--ssim-mode", choices=["global", "windowed"])
    metrics.add_argument("--peak-255", action="store_true", help="PSNR peak 255 instead of the image maximum")

    sweep = commands.add_parser("sweep", help="quality over a range of k, as CSV")
    sweep.add_argument("input")
    sweep.add_argument("output")
    sweep.add_argument("--ks", help='"40", "8,16,32" or "8:448:8" (default 8:448:8)')
    sweep.add_argument("--ssim-mode", choices=["global", "windowed"])
    sweep.add_argument("--peak-255", action="store_true")
    sweep.add_argument("--summary", help="also write the per-zone summary CSV here")

    spectrum = commands.add_parser("spectrum", help="singular values and E(k) for every k, as CSV")
    spectrum.add_argument("input")
    spectrum.add_argument("output")

    table = commands.add_parser("table", help="average sweeps over several images and summarise by zone")
    table.add_argument("output")
    table.add_argument("inputs", nargs="+")
    table.add_argument("--ks")
    table.add_argument("--ssim-mode", choices=["global", "windowed"])
    table.add_argument("--peak-255", action="store_true")
    table.add_argument("--summary")

    return parser


def dispatch(args: argparse.Namespace) -> int:
    if args.command == "compress":
        return cmd_compress(args.input, args.output, rank=args.rank, target_e=args.target_e,
                            precision=args.precision)
    if args.command == "decompress":
        return cmd_decompress(args.input, args.output)
    if args.command == "metrics":
        return cmd_metrics(args.original, args.other, ssim_mode=args.ssim_mode, peak_255=args.peak_255)
    if args.command == "sweep":
        return cmd_sweep(args.input, args.output, ks=args.ks, ssim_mode=args.ssim_mode,
                         peak_255=args.peak_255, summary_path=args.summary)
    if args.command == "spectrum":
        return cmd_spectrum(args.input, args.output)
    return cmd_table(args.inputs, args.output, ks=args.ks, ssim_mode=args.ssim_mode,
                     peak_255=args.peak_255, summary_path=args.summary)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    configure_logging(args.log_level)
    try:
        return dispatch(args)
    except SvdcError as exc:
        print(f"svdc: error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError) as exc:
        print(f"svdc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
