"""
Quality Report for svdc
Bundles MSE, PSNR, SSIM, energy ratio and zone for one retained rank
"""

from typing import Dict, Optional

from pydantic import BaseModel, Field, model_validator

from linalg.matrix import Matrix
from linalg.svd import SvdFactors, reconstruct, truncate
from metrics.energy import energy_ratio
from metrics.quality import format_db, mse, psnr
from metrics.ssim import SsimParams, ssim
from metrics.zones import Zone, classify_zone


class QualityReport(BaseModel):
    """Quality of the rank-k approximation of one image."""
    k: int = Field(ge=1)
    mse: float = Field(ge=0.0)
    psnr_db: float  # math.inf when mse == 0
    ssim: float = Field(ge=-1.0, le=1.0)
    energy_ratio: float = Field(ge=0.0, le=1.0)
    zone: Zone

    @model_validator(mode="after")
    def _infinite_psnr_iff_lossless(self):
        if (self.mse == 0.0) != (self.psnr_db == float("inf")):
            raise ValueError(f"psnr {self.psnr_db} inconsistent with mse {self.mse}")
        return self

    def to_pairs(self) -> Dict[str, str]:
        """key=value fields as printed by the CLI."""
        return {
            "k": str(self.k),
            "mse": repr(self.mse),
            "psnr": format_db(self.psnr_db),
            "ssim": repr(self.ssim),
            "e": repr(self.energy_ratio),
            "zone": self.zone.label,
            "appreciation": self.zone.appreciation
        }


def quality_report(original: Matrix, factors: SvdFactors, k: int,
                   params: SsimParams = None, peak: Optional[float] = None) -> QualityReport:
    """
    Reconstruct I_k from the factors and compare it, unquantized, with the original.
    From k = rank on the retained factorization is exact, so the original is compared with itself.
    """
    e = energy_ratio(factors, k)
    if k >= factors.rank:
        approximation = original
    else:
        approximation = reconstruct(truncate(factors, k))
    return QualityReport(
        k=k,
        mse=mse(original, approximation),
        psnr_db=psnr(original, approximation, peak=peak),
        ssim=ssim(original, approximation, params),
        energy_ratio=e,
        zone=classify_zone(e)
    )
