"""
Rank Selection for svdc
Smallest k whose energy ratio reaches a target
"""

import logging

import numpy as np
from pydantic import BaseModel, Field, model_validator

from core.exceptions import OutOfRange
from linalg.svd import SvdFactors
from metrics.energy import energy_ratios

logger = logging.getLogger(__name__)


class RankSelection(BaseModel):
    k: int = Field(ge=1)
    achieved_e: float = Field(ge=0.0, le=1.0)
    target_e: float = Field(gt=0.0, le=1.0)

    @model_validator(mode="after")
    def _target_reached(self):
        if self.achieved_e < self.target_e:
            raise ValueError(f"achieved {self.achieved_e} below target {self.target_e}")
        return self


def choose_rank(factors: SvdFactors, target_e: float) -> RankSelection:
    """Scan E(1), E(2), ... and stop at the first value reaching target_e."""
    if not 0.0 < target_e <= 1.0:
        raise OutOfRange(f"target energy ratio {target_e!r} outside (0, 1]")
    ratios = energy_ratios(factors)
    # E(rank) == 1, so a hit always exists
    k = int(np.argmax(ratios >= target_e)) + 1
    selection = RankSelection(k=k, achieved_e=float(ratios[k - 1]), target_e=target_e)
    logger.info("target E=%s -> k=%d (achieved %s)", target_e, k, selection.achieved_e)
    return selection
