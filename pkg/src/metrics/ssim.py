"""
Structural Similarity for svdc
Global and Gaussian-windowed SSIM in luminance, contrast, structure form
"""

from enum import Enum

import numpy as np
from pydantic import BaseModel, Field, field_validator
from scipy import signal

from config.settings import SSIM_CONFIG
from core.exceptions import DimensionMismatch, ImageTooSmall
from linalg.matrix import Matrix


class SsimMode(str, Enum):
    GLOBAL = "global"
    WINDOWED = "windowed"


class SsimParams(BaseModel):
    """
    Stabilising constants and window shape.
    C1, C2, C3 are derived from k1, k2 and the dynamic range, never stored.
    """
    k1: float = Field(default=SSIM_CONFIG["k1"], gt=0.0)
    k2: float = Field(default=SSIM_CONFIG["k2"], gt=0.0)
    dynamic_range: float = Field(default=SSIM_CONFIG["dynamic_range"], gt=0.0)
    mode: SsimMode = SsimMode(SSIM_CONFIG["mode"])
    window_size: int = Field(default=SSIM_CONFIG["window_size"], ge=3)
    window_sigma: float = Field(default=SSIM_CONFIG["window_sigma"], gt=0.0)

    model_config = {"frozen": True}

    @field_validator("window_size")
    @classmethod
    def _odd_window(cls, value: int) -> int:
        if value % 2 == 0:
            raise ValueError(f"window_size must be odd, got {value}")
        return value

    @property
    def c1(self) -> float:
        return (self.k1 * self.dynamic_range) ** 2

    @property
    def c2(self) -> float:
        return (self.k2 * self.dynamic_range) ** 2

    @property
    def c3(self) -> float:
        return self.c2 / 2.0


def gaussian_window(size: int, sigma: float) -> np.ndarray:
    """Normalised size x size Gaussian kernel."""
    offsets = np.arange(size, dtype=np.float64) - (size - 1) / 2.0
    profile = np.exp(-(offsets ** 2) / (2.0 * sigma ** 2))
    profile /= profile.sum()
    return np.outer(profile, profile)


def _combine(mu_x, mu_y, var_x, var_y, cov, params: SsimParams):
    # l * c * s with C3 = C2 / 2 reduces to the two-factor product below
    mu_xy = mu_x * mu_y
    luminance = (2.0 * mu_xy + params.c1) / (mu_x * mu_x + mu_y * mu_y + params.c1)
    contrast_structure = (2.0 * cov + params.c2) / (var_x + var_y + params.c2)
    return luminance * contrast_structure


def _global_ssim(x: np.ndarray, y: np.ndarray, params: SsimParams) -> float:
    mu_x = x.mean()
    mu_y = y.mean()
    dx = x - mu_x
    dy = y - mu_y
    var_x = np.mean(dx * dx)
    var_y = np.mean(dy * dy)
    cov = np.mean(dx * dy)
    return float(_combine(mu_x, mu_y, var_x, var_y, cov, params))


def _windowed_ssim(x: np.ndarray, y: np.ndarray, params: SsimParams) -> float:
    if min(x.shape) < params.window_size:
        raise ImageTooSmall(x.shape, params.window_size)
    window = gaussian_window(params.window_size, params.window_sigma)

    def local_mean(img):
        return signal.convolve2d(img, window, mode="valid")

    mu_x = local_mean(x)
    mu_y = local_mean(y)
    var_x = local_mean(x * x) - mu_x * mu_x
    var_y = local_mean(y * y) - mu_y * mu_y
    cov = local_mean(x * y) - mu_x * mu_y
    ssim_map = _combine(mu_x, mu_y, var_x, var_y, cov, params)
    # fixed-order reduction keeps the mean deterministic
    return float(np.add.reduce(ssim_map.ravel()) / ssim_map.size)


def ssim(original: Matrix, other: Matrix, params: SsimParams = None) -> float:
    """Structural similarity of two equally sized images."""
    params = params or SsimParams()
    if original.shape != other.shape:
        raise DimensionMismatch(original.shape, other.shape)
    x = original.data
    y = other.data
    if params.mode is SsimMode.GLOBAL:
        value = _global_ssim(x, y, params)
    else:
        value = _windowed_ssim(x, y, params)
    # rounding overshoot stays inside [-1, 1]
    return min(max(value, -1.0), 1.0)
