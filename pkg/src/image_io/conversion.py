"""
Pixel Conversion for svdc
RGB to gray, pixel re-quantization, and image <-> matrix bridging
"""

import numpy as np

from config.settings import CODEC_CONFIG
from core.exceptions import NonFiniteInput
from image_io.pgm import ImageGray
from linalg.matrix import Matrix

# Rec. 601 luma weights
LUMA_WEIGHTS = (0.299, 0.587, 0.114)


def _round_half_away(values: np.ndarray) -> np.ndarray:
    return np.sign(values) * np.floor(np.abs(values) + 0.5)


def to_gray(r: int, g: int, b: int) -> int:
    """Rec. 601 luma of one RGB pixel, rounded and clamped to a byte."""
    wr, wg, wb = LUMA_WEIGHTS
    luma = wr * r + wg * g + wb * b
    return int(np.clip(_round_half_away(np.array(luma)), 0, 255))


def rgb_to_gray(rgb: np.ndarray) -> np.ndarray:
    """Vectorised to_gray over an (h, w, 3) byte array."""
    rgb = rgb.astype(np.float64)
    wr, wg, wb = LUMA_WEIGHTS
    luma = wr * rgb[..., 0] + wg * rgb[..., 1] + wb * rgb[..., 2]
    return np.clip(_round_half_away(luma), 0, 255).astype(np.uint8)


def quantize_pixels(values: np.ndarray) -> np.ndarray:
    """Clamp to the pixel range, then round half away from zero."""
    if not np.all(np.isfinite(values)):
        raise NonFiniteInput("cannot quantize NaN or Inf to pixels")
    clamped = np.clip(values, CODEC_CONFIG["pixel_min"], CODEC_CONFIG["pixel_max"])
    return _round_half_away(clamped).astype(np.uint8)


def image_to_matrix(img: ImageGray) -> Matrix:
    return Matrix(img.pixels.astype(np.float64))


def matrix_to_image(m: Matrix) -> ImageGray:
    return ImageGray(quantize_pixels(m.data))
