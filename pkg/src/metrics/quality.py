"""
Pixel Error Metrics for svdc
Mean squared error and peak signal-to-noise ratio
"""

import math
from typing import Optional

import numpy as np

from core.exceptions import DimensionMismatch, ZeroPeak
from linalg.matrix import Matrix

PLUS_INFINITY = math.inf


def _check_dimensions(original: Matrix, other: Matrix) -> None:
    if original.shape != other.shape:
        raise DimensionMismatch(original.shape, other.shape)


def mse(original: Matrix, other: Matrix) -> float:
    """Mean of the squared entry-wise differences."""
    _check_dimensions(original, other)
    diff = original.data - other.data
    return math.fsum((diff * diff).ravel().tolist()) / diff.size


def psnr(original: Matrix, other: Matrix, peak: Optional[float] = None) -> float:
    """
    10 log10(peak^2 / MSE) in dB; math.inf when the images are equal.
    peak defaults to the largest entry of the original image.
    """
    _check_dimensions(original, other)
    if peak is None:
        peak = float(np.max(original.data))
    if peak <= 0.0:
        raise ZeroPeak("psnr undefined: original image peak is zero")
    error = mse(original, other)
    if error == 0.0:
        return PLUS_INFINITY
    return 10.0 * math.log10(peak * peak / error)


def format_db(value: float) -> str:
    """Render a PSNR value, "inf" for lossless pairs."""
    return "inf" if math.isinf(value) else repr(value)
