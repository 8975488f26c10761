"""
Rank Sweep for svdc
Evaluates quality over many k from a single factorization; CSV emission and averaging
"""

import asyncio
import csv
import io
import logging
import math
from typing import Dict, Iterable, List, Optional, Sequence

from pydantic import BaseModel

from codec.encoder import compression_ratio
from config.settings import SWEEP_CONFIG
from core.exceptions import InvalidRange
from linalg.matrix import Matrix
from linalg.svd import SvdFactors, SvdOptions, svd
from metrics.energy import cumulative_energy, energy_ratios
from metrics.quality import format_db
from metrics.report import quality_report
from metrics.ssim import SsimParams
from metrics.zones import ZoneSummary, classify_zone

logger = logging.getLogger(__name__)

CSV_HEADER = ["k", "mse", "psnr_db", "ssim", "energy_ratio", "zone", "compression_ratio"]
SPECTRUM_HEADER = ["k", "sigma", "cumulative_energy", "energy_ratio"]
ZONE_HEADER = ["zone", "appreciation", "rows", "k_min", "k_max", "psnr_min_db", "psnr_max_db",
               "ssim_min", "ssim_max", "e_min_pct", "e_max_pct"]


class SweepRow(BaseModel):
    """One k of a sweep."""
    k: int
    mse: float
    psnr_db: float
    ssim: float
    energy_ratio: float
    zone: str
    compression_ratio: float

    def to_csv(self) -> List[str]:
        return [
            str(self.k),
            repr(self.mse),
            format_db(self.psnr_db),
            repr(self.ssim),
            repr(self.energy_ratio),
            self.zone,
            repr(self.compression_ratio)
        ]


def default_ks(max_rank: int) -> List[int]:
    """8, 16, ..., 448 clipped to the image's largest rank."""
    ks = range(SWEEP_CONFIG["default_start"], SWEEP_CONFIG["default_stop"] + 1, SWEEP_CONFIG["default_step"])
    clipped = [k for k in ks if k <= max_rank]
    return clipped or [max_rank]


def parse_ks(text: Optional[str], max_rank: int) -> List[int]:
    """
    Parse "40", "8,16,32", "8:448:8" (inclusive start:stop:step) or a
    comma-separated mix. Returns sorted unique ranks, all within 1..max_rank.
    """
    if text is None or not text.strip():
        return default_ks(max_rank)
    ks = set()
    for part in text.split(","):
        part = part.strip()
        try:
            if ":" in part:
                pieces = [int(p) for p in part.split(":")]
                if len(pieces) == 2:
                    pieces.append(1)
                if len(pieces) != 3 or pieces[2] < 1 or pieces[1] < pieces[0]:
                    raise ValueError(part)
                start, stop, step = pieces
                ks.update(range(start, stop + 1, step))
            else:
                ks.add(int(part))
        except ValueError:
            raise InvalidRange(f"invalid range {part!r} in --ks {text!r}") from None
    bad = sorted(k for k in ks if not 1 <= k <= max_rank)
    if bad:
        raise InvalidRange(f"invalid range: k values {bad} outside 1..{max_rank}")
    return sorted(ks)


def evaluate_rank(original: Matrix, factors: SvdFactors, k: int,
                  params: SsimParams, peak: Optional[float]) -> SweepRow:
    report = quality_report(original, factors, k, params, peak=peak)
    logger.debug("k=%d e=%r psnr=%s", k, report.energy_ratio, format_db(report.psnr_db))
    return SweepRow(
        k=k,
        mse=report.mse,
        psnr_db=report.psnr_db,
        ssim=report.ssim,
        energy_ratio=report.energy_ratio,
        zone=report.zone.label,
        compression_ratio=compression_ratio(original.rows, original.cols, k)
    )


async def run_sweep(original: Matrix, ks: Sequence[int], params: SsimParams = None,
                    peak: Optional[float] = None, opts: SvdOptions = None,
                    max_parallel: Optional[int] = None) -> List[SweepRow]:
    """
    Factor once, then evaluate every k concurrently in worker threads.
    Rows come back in the order of ks (ascending) whatever the completion order.
    """
    params = params or SsimParams()
    factors = svd(original, opts)
    semaphore = asyncio.Semaphore(max_parallel or SWEEP_CONFIG["max_parallel"])

    async def evaluate(k: int) -> SweepRow:
        async with semaphore:
            return await asyncio.to_thread(evaluate_rank, original, factors, k, params, peak)

    rows = await asyncio.gather(*(evaluate(k) for k in ks))
    logger.info("swept %d ranks on %dx%d (rank %d)", len(rows), original.rows, original.cols, factors.rank)
    return list(rows)


def average_sweeps(sweeps: Sequence[Sequence[SweepRow]]) -> List[SweepRow]:
    """
    Per-k mean over several images' sweeps (only ks present in all of them).
    PSNR stays infinite at a k where any image is lossless; zone follows the mean E.
    """
    if not sweeps:
        return []
    by_k: Dict[int, List[SweepRow]] = {}
    for rows in sweeps:
        for row in rows:
            by_k.setdefault(row.k, []).append(row)

    averaged = []
    for k in sorted(by_k):
        members = by_k[k]
        if len(members) != len(sweeps):
            continue
        count = len(members)
        psnrs = [r.psnr_db for r in members]
        e = math.fsum(r.energy_ratio for r in members) / count
        averaged.append(SweepRow(
            k=k,
            mse=math.fsum(r.mse for r in members) / count,
            psnr_db=math.inf if any(math.isinf(p) for p in psnrs) else math.fsum(psnrs) / count,
            ssim=math.fsum(r.ssim for r in members) / count,
            energy_ratio=min(e, 1.0),
            zone=classify_zone(min(e, 1.0)).label,
            compression_ratio=math.fsum(r.compression_ratio for r in members) / count
        ))
    return averaged


def rows_to_csv(rows: Iterable[SweepRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.to_csv())
    return buffer.getvalue()


def zones_to_csv(summaries: Iterable[ZoneSummary]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(ZONE_HEADER)
    for s in summaries:
        writer.writerow([
            s.zone, s.appreciation, s.rows, s.k_min, s.k_max,
            format_db(s.psnr_min_db), format_db(s.psnr_max_db),
            repr(s.ssim_min), repr(s.ssim_max), repr(s.e_min_pct), repr(s.e_max_pct)
        ])
    return buffer.getvalue()


def spectrum_to_csv(factors: SvdFactors) -> str:
    """k, sigma_k, cumulative energy and E(k) for every k."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SPECTRUM_HEADER)
    cumulative = cumulative_energy(factors)
    ratios = energy_ratios(factors)
    for k in range(1, factors.max_rank + 1):
        writer.writerow([k, repr(float(factors.sigma[k - 1])), repr(float(cumulative[k - 1])),
                         repr(float(ratios[k - 1]))])
    return buffer.getvalue()
