"""
CLI Commands for svdc
compress, decompress, metrics, sweep, spectrum and table
"""

import asyncio
import logging
from pathlib import Path
from typing import List, Optional, TextIO

from cli.sweep import (average_sweeps, parse_ks, rows_to_csv, run_sweep,
                       spectrum_to_csv, zones_to_csv)
from codec.container import Precision, read_container, write_container
from codec.encoder import (byte_compression_ratio, compression_ratio,
                           decode, encode_factors, to_truncated)
from codec.rank_selection import choose_rank
from config.settings import CODEC_CONFIG
from image_io.conversion import image_to_matrix, matrix_to_image
from image_io.pgm import load_image, save_image
from linalg.svd import svd
from metrics.energy import energy_ratio, energy_ratio_truncated
from metrics.quality import format_db, mse, psnr
from metrics.ssim import SsimMode, SsimParams, ssim
from metrics.zones import classify_zone, energy_band, summarize_zones

logger = logging.getLogger(__name__)


def _peak(force_255: bool) -> Optional[float]:
    return 255.0 if force_255 else None


def _ssim_params(mode: Optional[str]) -> SsimParams:
    return SsimParams(mode=SsimMode(mode)) if mode else SsimParams()


def _print_pairs(pairs: dict, out: TextIO) -> None:
    for key, value in pairs.items():
        print(f"{key}={value}", file=out)


def cmd_compress(input_path: str, output_path: str, rank: Optional[int] = None,
                 target_e: Optional[float] = None, precision: str = "f32", out: TextIO = None) -> int:
    """Encode a PGM into an SVDC container; one summary line on stdout."""
    if (rank is None) == (target_e is None):
        raise ValueError("exactly one of rank or target_e is required")
    image = image_to_matrix(load_image(input_path))
    factors = svd(image)
    if target_e is not None:
        k = choose_rank(factors, target_e).k
    else:
        k = rank
    e = energy_ratio(factors, k)
    zone = classify_zone(e)
    container = encode_factors(image, factors, k, Precision.parse(precision))
    Path(output_path).write_bytes(write_container(container))
    logger.info("wrote %s (%d bytes)", output_path, container.byte_size)

    m, n = image.shape
    print(
        f"k={k} e={e!r} zone={zone.label} appreciation=\"{zone.appreciation}\" "
        f"ratio={compression_ratio(m, n, k):.4f} "
        f"byte_ratio={byte_compression_ratio(m, n, k, container.precision):.4f} "
        f"precision={container.precision.name.lower()} output={output_path}",
        file=out
    )
    return 0


def cmd_decompress(input_path: str, output_path: str) -> int:
    """Decode an SVDC container to a PGM of the clamped, rounded reconstruction."""
    container = read_container(Path(input_path).read_bytes())
    save_image(matrix_to_image(decode(container)), output_path)
    return 0


def cmd_metrics(original_path: str, other_path: str, ssim_mode: Optional[str] = None,
                peak_255: bool = False, out: TextIO = None) -> int:
    """
    key=value report of MSE, PSNR, SSIM. When the other file is a container,
    it is decoded to pixels and the energy ratio and zone are added.
    """
    original = image_to_matrix(load_image(original_path))
    data = Path(other_path).read_bytes()
    e = None
    if data[:4] == CODEC_CONFIG["magic"]:
        container = read_container(data)
        other = decode(container)
        e = energy_ratio_truncated(to_truncated(container))
    else:
        other = image_to_matrix(load_image(other_path))

    params = _ssim_params(ssim_mode)
    pairs = {
        "mse": repr(mse(original, other)),
        "psnr": format_db(psnr(original, other, peak=_peak(peak_255))),
        "ssim": repr(ssim(original, other, params))
    }
    if e is not None:
        zone = classify_zone(e)
        pairs.update({"k": str(container.k), "e": repr(e), "zone": zone.label})
    _print_pairs(pairs, out)
    return 0


def cmd_sweep(input_path: str, output_path: str, ks: Optional[str] = None,
              ssim_mode: Optional[str] = None, peak_255: bool = False,
              summary_path: Optional[str] = None, out: TextIO = None) -> int:
    """Quality over many k from one factorization, written as CSV."""
    image = image_to_matrix(load_image(input_path))
    ranks = parse_ks(ks, min(image.shape))
    rows = asyncio.run(run_sweep(image, ranks, _ssim_params(ssim_mode), peak=_peak(peak_255)))
    Path(output_path).write_text(rows_to_csv(rows))
    if summary_path:
        Path(summary_path).write_text(zones_to_csv(summarize_zones(rows)))
    e_min, e_max, spread = energy_band(rows)
    print(f"rows={len(rows)} e_min={e_min!r} e_max={e_max!r} e_spread_pct={spread!r} output={output_path}", file=out)
    return 0


def cmd_spectrum(input_path: str, output_path: str, out: TextIO = None) -> int:
    """Singular values, cumulative energy and E(k) for every k."""
    factors = svd(image_to_matrix(load_image(input_path)))
    Path(output_path).write_text(spectrum_to_csv(factors))
    print(f"rank={factors.rank} output={output_path}", file=out)
    return 0


def cmd_table(input_paths: List[str], output_path: str, ks: Optional[str] = None,
              ssim_mode: Optional[str] = None, peak_255: bool = False,
              summary_path: Optional[str] = None, out: TextIO = None) -> int:
    """Sweep several images, average per k, and summarise the averages by zone."""
    sweeps = []
    params = _ssim_params(ssim_mode)
    for path in input_paths:
        image = image_to_matrix(load_image(path))
        ranks = parse_ks(ks, min(image.shape))
        sweeps.append(asyncio.run(run_sweep(image, ranks, params, peak=_peak(peak_255))))
    averaged = average_sweeps(sweeps)
    Path(output_path).write_text(rows_to_csv(averaged))
    summaries = summarize_zones(averaged)
    if summary_path:
        Path(summary_path).write_text(zones_to_csv(summaries))
    for s in summaries:
        print(
            f"zone={s.zone} k={s.k_min}..{s.k_max} psnr={format_db(s.psnr_min_db)}..{format_db(s.psnr_max_db)} "
            f"ssim={s.ssim_min:.4f}..{s.ssim_max:.4f} e_pct={s.e_min_pct:.4f}..{s.e_max_pct:.4f} "
            f"appreciation=\"{s.appreciation}\"",
            file=out
        )
    return 0
