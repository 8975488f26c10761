"""
Appreciation Zones for svdc
Maps an energy ratio to the 99 / 999 / 9999 quality zones and summarises sweeps per zone
"""

import math
from enum import Enum
from typing import Iterable, List, Optional, Tuple

from pydantic import BaseModel

from config.settings import ZONE_CONFIG
from core.exceptions import OutOfRange


class Zone(Enum):
    """Ordered zones; value is (rank, label, appreciation)."""
    BELOW_THRESHOLD = (0, "below", "")
    POOR_99 = (1, "99", "Poor quality")
    GOOD_999 = (2, "999", "Good quality")
    VERY_GOOD_9999 = (3, "9999", "Very good quality")

    @property
    def order(self) -> int:
        return self.value[0]

    @property
    def label(self) -> str:
        return self.value[1]

    @property
    def appreciation(self) -> str:
        return self.value[2]

    def __lt__(self, other: "Zone") -> bool:
        return self.order < other.order

    def __le__(self, other: "Zone") -> bool:
        return self.order <= other.order

    @classmethod
    def from_label(cls, label: str) -> "Zone":
        for zone in cls:
            if zone.label == label:
                return zone
        raise ValueError(f"unknown zone label {label!r}")


def classify_zone(e: float) -> Zone:
    """Half-open intervals [0.99, 0.999), [0.999, 0.9999), top zone closed at 1."""
    if math.isnan(e) or e < 0.0 or e > 1.0:
        raise OutOfRange(f"energy ratio {e!r} outside [0, 1]")
    if e >= ZONE_CONFIG["very_good"]:
        return Zone.VERY_GOOD_9999
    if e >= ZONE_CONFIG["good"]:
        return Zone.GOOD_999
    if e >= ZONE_CONFIG["poor"]:
        return Zone.POOR_99
    return Zone.BELOW_THRESHOLD


class ZoneSummary(BaseModel):
    """One column of the appreciation table."""
    zone: str
    appreciation: str
    rows: int
    k_min: int
    k_max: int
    psnr_min_db: float
    psnr_max_db: float
    ssim_min: float
    ssim_max: float
    e_min_pct: float
    e_max_pct: float


def _span(values: List[float]) -> Tuple[float, float]:
    return min(values), max(values)


def summarize_zones(rows: Iterable) -> List[ZoneSummary]:
    """
    Group sweep rows (anything with k, psnr_db, ssim, energy_ratio, zone)
    by zone, in zone order. Empty zones are omitted.
    """
    grouped = {}
    for row in rows:
        grouped.setdefault(Zone.from_label(row.zone), []).append(row)

    summaries = []
    for zone in sorted(grouped, key=lambda z: z.order):
        members = grouped[zone]
        psnr_lo, psnr_hi = _span([r.psnr_db for r in members])
        ssim_lo, ssim_hi = _span([r.ssim for r in members])
        e_lo, e_hi = _span([r.energy_ratio for r in members])
        summaries.append(ZoneSummary(
            zone=zone.label,
            appreciation=zone.appreciation,
            rows=len(members),
            k_min=min(r.k for r in members),
            k_max=max(r.k for r in members),
            psnr_min_db=psnr_lo,
            psnr_max_db=psnr_hi,
            ssim_min=ssim_lo,
            ssim_max=ssim_hi,
            e_min_pct=100.0 * e_lo,
            e_max_pct=100.0 * e_hi
        ))
    return summaries


def energy_band(rows: Iterable) -> Optional[Tuple[float, float, float]]:
    """(E min, E max, spread in percentage points) over sweep rows."""
    values = [r.energy_ratio for r in rows]
    if not values:
        return None
    lo, hi = min(values), max(values)
    return lo, hi, 100.0 * (hi - lo)
