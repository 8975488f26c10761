"""
Energy Ratio for svdc
Share of the image energy carried by the first k singular values
"""

import math

import numpy as np

from core.exceptions import RankOutOfRange, ZeroEnergy
from linalg.svd import SvdFactors, TruncatedSvd

# largest double below 1: ratios for k < rank never reach exactly 1
_BELOW_ONE = float(np.nextafter(1.0, 0.0))


def cumulative_energy(factors: SvdFactors) -> np.ndarray:
    """Entry j is the sum of the j+1 largest squared singular values."""
    return np.cumsum(np.asarray(factors.sigma, dtype=np.float64) ** 2)


def energy_ratios(factors: SvdFactors) -> np.ndarray:
    """
    E(k) for k = 1..p as one vector.
    Exactly 1 from k = rank on; clamped strictly below 1 before that.
    """
    if factors.rank == 0:
        raise ZeroEnergy("energy ratio undefined for an all-zero image")
    total = factors.total_energy()
    squares = (np.asarray(factors.sigma, dtype=np.float64) ** 2).tolist()
    # E(k) = 1 - discarded energy / total
    tails = np.array([math.fsum(squares[k:]) for k in range(1, len(squares) + 1)])
    ratios = np.clip(1.0 - tails / total, 0.0, _BELOW_ONE)
    ratios[factors.rank - 1:] = 1.0
    return ratios


def energy_ratio(factors: SvdFactors, k: int) -> float:
    if not 1 <= k <= factors.max_rank:
        raise RankOutOfRange(k, factors.max_rank)
    return float(energy_ratios(factors)[k - 1])


def energy_ratio_truncated(t: TruncatedSvd) -> float:
    """Energy ratio from a truncation alone, using its stored total energy."""
    if t.total_energy <= 0.0:
        raise ZeroEnergy("energy ratio undefined: stored total energy is zero")
    sigma = np.asarray(t.sigma_k, dtype=np.float64)
    retained = math.fsum((sigma[::-1] ** 2).tolist())
    return min(max(retained / t.total_energy, 0.0), 1.0)
